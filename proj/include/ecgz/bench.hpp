#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ecgz/ratecontrol.hpp"
#include "ecgz/record.hpp"

namespace ecgz {

struct BenchConfig {
  std::filesystem::path database;
  std::vector<double> targets{1.0, 0.7, 0.4};
  Metric metric = Metric::prd;
  std::vector<Mode> modes{Mode::one_d, Mode::two_d};
  int jobs = 1;
  int levels_1d = 4;
  int levels_2d = 6;
  double tolerance = 0.01;
  bool timestamp = true;
  PlainFormat plain;  // rate/bits for CSV and raw inputs, channel for WFDB
};

struct BenchRow {
  QualityReport report;
  bool target_met = false;
};

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // population
};

Summary summarize(const std::vector<double>& values);

/// CR histogram with bins [10k, 10k + 10).
std::vector<std::size_t> cr_histogram(const std::vector<double>& crs, double bin_width = 10.0);

struct BenchTable {
  Mode mode = Mode::two_d;
  double target = 0.0;
  std::vector<BenchRow> rows;  // sorted by record_id
  Summary cr, prd, prd_b;
  std::size_t targets_missed = 0;
};

struct BenchResult {
  std::vector<BenchTable> tables;  // mode-major, targets in the order given
  std::vector<std::string> records;
  std::vector<std::string> failures;  // "record_id: message"
};

/// Record files in a directory, sorted: WFDB headers, .csv, .raw/.bin/.r16.
std::vector<std::filesystem::path> discover_records(const std::filesystem::path& dir);

BenchResult run_bench(const BenchConfig& config);

/// Writes per-table CSVs, histogram CSVs, summary.csv and run.json into `out_dir`.
void write_bench_outputs(const BenchResult& result, const BenchConfig& config, const std::filesystem::path& out_dir);

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace ecgz
