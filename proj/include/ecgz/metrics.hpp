#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "ecgz/container.hpp"

namespace ecgz {

/// Percent root-mean-square difference: 100 * ||f - fr|| / ||f||.
double prd(std::span<const std::int32_t> original, std::span<const std::int32_t> reconstructed);

/// PRD with `baseline` subtracted from the original in the denominator only.
double prd_b(std::span<const std::int32_t> original, std::span<const std::int32_t> reconstructed,
             double baseline = 1024.0);

double compression_ratio(std::uint64_t uncompressed_bits, std::uint64_t compressed_bits);

struct QualityReport {
  std::string record_id;
  Mode mode = Mode::two_d;
  bool fell_back_to_1d = false;
  int levels = 0;
  double delta = 0.0;
  std::uint64_t uncompressed_bits = 0;
  std::uint64_t compressed_bits = 0;
  double cr = 0.0;
  double prd = 0.0;
  double prd_b = 0.0;
};

std::string mode_name(Mode mode);
Mode parse_mode(std::string_view name);

/// One-line JSON object.
std::string to_json(const QualityReport& report);

}  // namespace ecgz
