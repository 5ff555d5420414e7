#include "ecgz/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "ecgz/error.hpp"

#ifndef ECGZ_VERSION
#define ECGZ_VERSION "dev"
#endif

namespace ecgz {

namespace fs = std::filesystem;

namespace {

std::string ext_of(const fs::path& p) {
  auto e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  return e;
}

std::string table_stem(Mode mode, Metric metric, double target) {
  return mode_name(mode) + "_" + metric_name(metric) + "_" + format_number(target);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

struct RecordJob {
  std::string id;
  std::vector<std::vector<BenchRow>> rows_by_mode;  // [mode][target]
  std::string error;
};

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(values.size()));
  return s;
}

std::vector<std::size_t> cr_histogram(const std::vector<double>& crs, double bin_width) {
  if (!(bin_width > 0.0)) throw ArgumentError("histogram bin width must be positive");
  std::vector<std::size_t> bins;
  for (double cr : crs) {
    const auto b = static_cast<std::size_t>(std::floor(std::max(cr, 0.0) / bin_width));
    if (b >= bins.size()) bins.resize(b + 1, 0);
    ++bins[b];
  }
  return bins;
}

std::vector<fs::path> discover_records(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = ext_of(entry.path());
    if (ext == ".hea" || ext == ".csv" || ext == ".raw" || ext == ".bin" || ext == ".r16") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

BenchResult run_bench(const BenchConfig& config) {
  const auto files = discover_records(config.database);
  if (files.empty()) throw std::runtime_error("no records found in '" + config.database.string() + "'");
  if (config.targets.empty()) throw ArgumentError("no distortion targets given");

  std::vector<RecordJob> jobs(files.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      auto& job = jobs[i];
      job.id = files[i].stem().string();
      try {
        const auto record = read_record(files[i], config.plain);
        job.id = record.record_id;
        for (Mode mode : config.modes) {
          EncodeOptions eo;
          eo.mode = mode;
          eo.levels = mode == Mode::two_d ? config.levels_2d : config.levels_1d;
          const PreparedRecord prepared(record, eo);
          RateControlOptions ro;
          ro.metric = config.metric;
          ro.tolerance = config.tolerance;
          std::vector<BenchRow> rows;
          for (double target : config.targets) {
            const auto res = find_delta(prepared, target, ro);
            rows.push_back({res.report, res.target_met});
          }
          job.rows_by_mode.push_back(std::move(rows));
        }
      } catch (const std::exception& e) {
        job.error = e.what();
        job.rows_by_mode.clear();
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(config.jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(jobs.begin(), jobs.end(), [](const RecordJob& a, const RecordJob& b) { return a.id < b.id; });

  BenchResult result;
  for (std::size_t m = 0; m < config.modes.size(); ++m) {
    for (std::size_t t = 0; t < config.targets.size(); ++t) {
      BenchTable table;
      table.mode = config.modes[m];
      table.target = config.targets[t];
      std::vector<double> cr, prd, prdb;
      for (const auto& job : jobs) {
        if (!job.error.empty()) continue;
        const auto& row = job.rows_by_mode[m][t];
        table.rows.push_back(row);
        cr.push_back(row.report.cr);
        prd.push_back(row.report.prd);
        prdb.push_back(row.report.prd_b);
        if (!row.target_met) ++table.targets_missed;
      }
      table.cr = summarize(cr);
      table.prd = summarize(prd);
      table.prd_b = summarize(prdb);
      result.tables.push_back(std::move(table));
    }
  }
  for (const auto& job : jobs) {
    if (job.error.empty()) {
      result.records.push_back(job.id);
    } else {
      result.failures.push_back(job.id + ": " + job.error);
    }
  }
  return result;
}

void write_bench_outputs(const BenchResult& result, const BenchConfig& config, const fs::path& out_dir) {
  fs::create_directories(out_dir);

  std::string summary =
      "mode,metric,target,records,cr_mean,cr_std,prd_mean,prd_std,prd_b_mean,prd_b_std,targets_missed\n";
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();

  for (const auto& table : result.tables) {
    const auto stem = table_stem(table.mode, config.metric, table.target);

    std::string csv = "record_id,delta,cr,prd,prd_b,compressed_bits,uncompressed_bits,target_met\n";
    std::vector<double> crs;
    for (const auto& row : table.rows) {
      const auto& r = row.report;
      csv += r.record_id + "," + format_number(r.delta) + "," + format_number(r.cr) + "," + format_number(r.prd) +
             "," + format_number(r.prd_b) + "," + std::to_string(r.compressed_bits) + "," +
             std::to_string(r.uncompressed_bits) + "," + (row.target_met ? "1" : "0") + "\n";
      crs.push_back(r.cr);
    }
    write_text(out_dir / (stem + ".csv"), csv);

    std::string hist = "bin_start,bin_end,count\n";
    const auto bins = cr_histogram(crs);
    for (std::size_t b = 0; b < bins.size(); ++b) {
      hist += std::to_string(b * 10) + "," + std::to_string((b + 1) * 10) + "," + std::to_string(bins[b]) + "\n";
    }
    write_text(out_dir / (stem + "_hist.csv"), hist);

    summary += mode_name(table.mode) + "," + metric_name(config.metric) + "," + format_number(table.target) + "," +
               std::to_string(table.rows.size()) + "," + format_number(table.cr.mean) + "," +
               format_number(table.cr.std) + "," + format_number(table.prd.mean) + "," +
               format_number(table.prd.std) + "," + format_number(table.prd_b.mean) + "," +
               format_number(table.prd_b.std) + "," + std::to_string(table.targets_missed) + "\n";

    nlohmann::ordered_json t;
    t["mode"] = mode_name(table.mode);
    t["target"] = table.target;
    t["records"] = table.rows.size();
    t["cr_mean"] = table.cr.mean;
    t["cr_std"] = table.cr.std;
    t["prd_mean"] = table.prd.mean;
    t["prd_std"] = table.prd.std;
    t["prd_b_mean"] = table.prd_b.mean;
    t["prd_b_std"] = table.prd_b.std;
    t["targets_missed"] = table.targets_missed;
    t["table_csv"] = stem + ".csv";
    t["histogram_csv"] = stem + "_hist.csv";
    tables.push_back(std::move(t));
  }
  write_text(out_dir / "summary.csv", summary);

  nlohmann::ordered_json meta;
  meta["code_version"] = ECGZ_VERSION;
  meta["database"] = config.database.string();
  meta["metric"] = metric_name(config.metric);
  nlohmann::ordered_json modes = nlohmann::ordered_json::array();
  for (Mode m : config.modes) modes.push_back(mode_name(m));
  meta["modes"] = modes;
  meta["levels_1d"] = config.levels_1d;
  meta["levels_2d"] = config.levels_2d;
  meta["channel"] = config.plain.channel;
  meta["tolerance"] = config.tolerance;
  meta["prd_b_baseline"] = 1024.0;
  meta["std_convention"] = "population";
  meta["histogram_bin_width"] = 10;
  meta["segmentation"] = "rows start at R peaks; samples before the first peak form row 0";
  if (config.timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta["timestamp"] = buf;
  }
  meta["records"] = result.records;
  meta["failures"] = result.failures;
  meta["tables"] = tables;
  write_text(out_dir / "run.json", meta.dump(2) + "\n");
}

}  // namespace ecgz
