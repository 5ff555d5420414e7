#include "ecgz/metrics.hpp"

#include <cmath>
#include <json.hpp>

#include "ecgz/error.hpp"

namespace ecgz {

namespace {

double norm_of_difference(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

void check_lengths(std::span<const std::int32_t> f, std::span<const std::int32_t> fr) {
  if (f.size() != fr.size()) {
    throw ArgumentError("PRD of sequences with different lengths (" + std::to_string(f.size()) + " vs " +
                        std::to_string(fr.size()) + ")");
  }
}

}  // namespace

double prd(std::span<const std::int32_t> original, std::span<const std::int32_t> reconstructed) {
  return prd_b(original, reconstructed, 0.0);
}

double prd_b(std::span<const std::int32_t> original, std::span<const std::int32_t> reconstructed, double baseline) {
  check_lengths(original, reconstructed);
  double den = 0.0;
  for (auto v : original) {
    const double c = static_cast<double>(v) - baseline;
    den += c * c;
  }
  if (!(den > 0.0)) throw ArgumentError("PRD undefined: original signal has zero norm");
  return 100.0 * norm_of_difference(original, reconstructed) / std::sqrt(den);
}

double compression_ratio(std::uint64_t uncompressed_bits, std::uint64_t compressed_bits) {
  if (compressed_bits == 0) throw ArgumentError("compression ratio with zero compressed size");
  return static_cast<double>(uncompressed_bits) / static_cast<double>(compressed_bits);
}

std::string mode_name(Mode mode) { return mode == Mode::two_d ? "2d" : "1d"; }

Mode parse_mode(std::string_view name) {
  if (name == "2d" || name == "2D") return Mode::two_d;
  if (name == "1d" || name == "1D") return Mode::one_d;
  throw ArgumentError("unknown mode '" + std::string(name) + "' (expected 1d or 2d)");
}

std::string to_json(const QualityReport& r) {
  nlohmann::ordered_json j;
  j["record_id"] = r.record_id;
  j["mode"] = mode_name(r.mode);
  j["fell_back_to_1d"] = r.fell_back_to_1d;
  j["levels"] = r.levels;
  j["delta"] = r.delta;
  j["uncompressed_bits"] = r.uncompressed_bits;
  j["compressed_bits"] = r.compressed_bits;
  j["cr"] = r.cr;
  j["prd"] = r.prd;
  j["prd_b"] = r.prd_b;
  return j.dump();
}

}  // namespace ecgz
