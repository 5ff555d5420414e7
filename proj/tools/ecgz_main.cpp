// ecgz: compress, decompress and benchmark ECG records.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ecgz/bench.hpp"
#include "ecgz/beatgrid.hpp"
#include "ecgz/codec.hpp"
#include "ecgz/error.hpp"
#include "ecgz/mixed.hpp"
#include "ecgz/qrs.hpp"
#include "ecgz/ratecontrol.hpp"
#include "ecgz/record.hpp"
#include "ecgz/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace ecgz;

namespace {

struct InputFlags {
  double fs = 360.0;
  int adc_bits = 11;
  std::size_t channel = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--fs", fs, "Sampling rate for CSV/raw16 input (Hz)")->capture_default_str();
    cmd->add_option("--adc-bits", adc_bits, "ADC bit depth for CSV/raw16 input")->capture_default_str();
    cmd->add_option("--channel", channel, "WFDB channel to read")->capture_default_str();
  }
  PlainFormat format() const { return {fs, adc_bits, channel}; }
};

void write_matrix_csv(std::ostream& out, const Matrix& m, bool magnitude) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_number(magnitude ? std::abs(m(r, c)) : m(r, c));
    }
    out << '\n';
  }
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  fn(out);
}

std::vector<double> parse_targets(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ArgumentError("bad target value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ArgumentError("no targets given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ecgz - lossy ECG compression with a beat-matrix mixed DCT/wavelet transform"};
  app.require_subcommand(1);
  std::string isa = "auto";
  app.add_option("--isa", isa, "Kernel set: auto, scalar, avx2, neon")->capture_default_str();

  // compress
  auto* compress = app.add_subcommand("compress", "Encode a record into an .ecgz file and print a JSON report");
  std::string c_in, c_out, c_mode = "2d";
  double c_delta = 0, c_prd = 0, c_prdb = 0, c_tol = 0.01;
  int c_levels = 0;
  InputFlags c_flags;
  compress->add_option("input", c_in, "Record (.hea, .csv, or raw16)")->required();
  compress->add_option("output", c_out, "Compressed output file")->required();
  compress->add_option("--mode", c_mode, "1d or 2d")->capture_default_str()->check(CLI::IsMember({"1d", "2d"}));
  auto* o_delta = compress->add_option("--delta", c_delta, "Quantization step");
  auto* o_prd = compress->add_option("--target-prd", c_prd, "Search the step for this PRD (percent)");
  auto* o_prdb = compress->add_option("--target-prdb", c_prdb, "Search the step for this PRD_B (percent)");
  o_delta->excludes(o_prd)->excludes(o_prdb);
  o_prd->excludes(o_prdb);
  compress->add_option("--levels", c_levels, "Wavelet levels (default 6 in 2d, 4 in 1d)");
  compress->add_option("--tolerance", c_tol, "Target tolerance (absolute percent)")->capture_default_str();
  c_flags.attach(compress);

  // decompress
  auto* decompress = app.add_subcommand("decompress", "Decode an .ecgz file to CSV or raw16 plus a JSON sidecar");
  std::string d_in, d_out;
  decompress->add_option("input", d_in, "Compressed file")->required();
  decompress->add_option("output", d_out, "Output (.csv for text, anything else raw16)")->required();

  // detect
  auto* detect = app.add_subcommand("detect", "Print detected R peak indices as CSV");
  std::string t_in, t_out;
  InputFlags t_flags;
  detect->add_option("input", t_in, "Record")->required();
  detect->add_option("-o,--out", t_out, "Output CSV (default stdout)");
  t_flags.attach(detect);

  // segment
  auto* seg = app.add_subcommand("segment", "Dump the zero-padded beat matrix as CSV (one beat per line)");
  std::string s_in, s_out;
  InputFlags s_flags;
  seg->add_option("input", s_in, "Record")->required();
  seg->add_option("-o,--out", s_out, "Output CSV (default stdout)");
  s_flags.attach(seg);

  // transform
  auto* xform = app.add_subcommand("transform", "Dump coefficient magnitudes of the beat matrix as CSV");
  std::string x_in, x_out, x_kind = "mixed";
  int x_levels = 6;
  InputFlags x_flags;
  xform->add_option("input", x_in, "Record")->required();
  xform->add_option("-o,--out", x_out, "Output CSV (default stdout)");
  xform->add_option("--kind", x_kind, "mixed (DCT columns + wavelet rows) or dwt2d")
      ->capture_default_str()
      ->check(CLI::IsMember({"mixed", "dwt2d"}));
  xform->add_option("--levels", x_levels, "Wavelet levels")->capture_default_str();
  x_flags.attach(xform);

  // bench
  auto* bench = app.add_subcommand("bench", "Rate-controlled sweep over a directory of records");
  BenchConfig bcfg;
  std::string b_targets = "1.0,0.7,0.4", b_metric = "prd", b_mode = "both", b_out = "bench_out";
  bool b_no_ts = false;
  InputFlags b_flags;
  bench->add_option("database", bcfg.database, "Directory with .hea/.dat, .csv or raw16 records")->required();
  bench->add_option("--targets", b_targets, "Comma-separated distortion targets (percent)")->capture_default_str();
  bench->add_option("--metric", b_metric, "prd or prdb")->capture_default_str()->check(CLI::IsMember({"prd", "prdb"}));
  bench->add_option("--mode", b_mode, "1d, 2d or both")->capture_default_str()->check(CLI::IsMember({"1d", "2d", "both"}));
  bench->add_option("--out", b_out, "Output directory")->capture_default_str();
  bench->add_option("--jobs", bcfg.jobs, "Records processed concurrently")->capture_default_str();
  bench->add_option("--levels-1d", bcfg.levels_1d, "Wavelet levels in 1d mode")->capture_default_str();
  bench->add_option("--levels-2d", bcfg.levels_2d, "Wavelet levels in 2d mode")->capture_default_str();
  bench->add_option("--tolerance", bcfg.tolerance, "Target tolerance (absolute percent)")->capture_default_str();
  bench->add_flag("--no-timestamp", b_no_ts, "Omit the timestamp from run.json");
  b_flags.attach(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (isa != "auto" && !simd::select_isa(simd::parse_isa(isa))) {
      std::cerr << "error: ISA '" << isa << "' is not available on this machine\n";
      return 2;
    }

    if (*compress) {
      EncodeOptions eo;
      eo.mode = parse_mode(c_mode);
      eo.levels = c_levels;
      const auto record = read_record(c_in, c_flags.format());
      const PreparedRecord prepared(record, eo);
      nlohmann::ordered_json out;
      double delta = c_delta;
      if (*o_prd || *o_prdb) {
        RateControlOptions ro;
        ro.metric = *o_prd ? Metric::prd : Metric::prd_b;
        ro.tolerance = c_tol;
        const auto res = find_delta(prepared, *o_prd ? c_prd : c_prdb, ro);
        delta = res.delta;
        out["target_metric"] = metric_name(ro.metric);
        out["target"] = *o_prd ? c_prd : c_prdb;
        out["target_met"] = res.target_met;
      } else if (!*o_delta) {
        std::cerr << "error: one of --delta, --target-prd, --target-prdb is required\n";
        return 2;
      }
      const auto file = prepared.encode(delta);
      write_file_bytes(c_out, file.bytes);
      const auto report = evaluate(prepared, delta);
      auto j = nlohmann::ordered_json::parse(to_json(report));
      for (auto& [k, v] : out.items()) j[k] = v;
      j["output"] = c_out;
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (*decompress) {
      auto file = parse_compressed(read_file_bytes(d_in));
      const auto rec = decode_record(file);
      const auto ext = fs::path(d_out).extension().string();
      if (ext == ".csv" || ext == ".txt") {
        const auto text = to_csv(rec.samples);
        write_file_bytes(d_out, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
      } else {
        write_file_bytes(d_out, to_raw16(rec.samples));
      }
      nlohmann::ordered_json meta;
      meta["samples"] = rec.samples.size();
      meta["sampling_rate"] = file.header.sampling_rate;
      meta["adc_bits"] = file.header.adc_bits;
      meta["mode"] = mode_name(file.header.mode);
      meta["fell_back_to_1d"] = file.header.fell_back_to_1d;
      meta["levels"] = file.header.levels;
      meta["delta"] = file.header.delta;
      meta["mean"] = file.header.mean;
      meta["rows"] = file.header.rows;
      meta["cols"] = file.header.cols;
      meta["compressed_bits"] = file.size_bits();
      const auto text = meta.dump(2) + "\n";
      write_file_bytes(d_out + ".json", {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
      return 0;
    }

    if (*detect) {
      const auto record = read_record(t_in, t_flags.format());
      const auto peaks = detect_r_peaks(record);
      with_output(t_out, [&](std::ostream& out) {
        out << "peak_index\n";
        for (auto p : peaks.indices) out << p << '\n';
      });
      return 0;
    }

    if (*seg) {
      const auto record = read_record(s_in, s_flags.format());
      const auto grid = segment(record, detect_r_peaks(record));
      with_output(s_out, [&](std::ostream& out) { write_matrix_csv(out, grid.beats, false); });
      std::cerr << "beat matrix " << grid.rows() << " x " << grid.cols() << ", mean " << grid.mean << "\n";
      return 0;
    }

    if (*xform) {
      const auto record = read_record(x_in, x_flags.format());
      const auto grid = segment(record, detect_r_peaks(record));
      const Matrix m = x_kind == "mixed" ? mixed_forward(grid, x_levels).coefficients
                                         : dwt97_2d_forward(grid.beats, x_levels);
      with_output(x_out, [&](std::ostream& out) { write_matrix_csv(out, m, true); });
      return 0;
    }

    if (*bench) {
      bcfg.targets = parse_targets(b_targets);
      bcfg.metric = parse_metric(b_metric);
      if (b_mode == "both") {
        bcfg.modes = {Mode::one_d, Mode::two_d};
      } else {
        bcfg.modes = {parse_mode(b_mode)};
      }
      bcfg.timestamp = !b_no_ts;
      bcfg.plain = b_flags.format();
      const auto result = run_bench(bcfg);
      write_bench_outputs(result, bcfg, b_out);
      for (const auto& t : result.tables) {
        std::cout << mode_name(t.mode) << " " << metric_name(bcfg.metric) << "=" << format_number(t.target)
                  << ": records=" << t.rows.size() << " CR mean=" << t.cr.mean << " std=" << t.cr.std
                  << " missed=" << t.targets_missed << "\n";
      }
      for (const auto& f : result.failures) std::cerr << "failed: " << f << "\n";
      return result.records.empty() ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
