#include "ecgz/ratecontrol.hpp"

#include <cmath>
#include <limits>

#include "ecgz/error.hpp"

namespace ecgz {

QualityReport evaluate(const PreparedRecord& prepared, double delta, double baseline) {
  const auto file = prepared.encode(delta);
  const auto rec = prepared.reconstruct(delta);
  const auto& original = prepared.record();
  QualityReport r;
  r.record_id = original.record_id;
  r.mode = prepared.mode();
  r.fell_back_to_1d = prepared.fell_back_to_1d();
  r.levels = prepared.levels();
  r.delta = delta;
  r.uncompressed_bits = uncompressed_size_bits(original);
  r.compressed_bits = file.size_bits();
  r.cr = compression_ratio(r.uncompressed_bits, r.compressed_bits);
  r.prd = prd(original.samples, rec);
  r.prd_b = prd_b(original.samples, rec, baseline);
  return r;
}

RateControlResult find_delta(const PreparedRecord& prepared, double target, const RateControlOptions& options) {
  if (!(options.delta_min > 0.0) || !(options.delta_max > options.delta_min)) {
    throw ArgumentError("invalid quantization step range");
  }
  const auto& original = prepared.record().samples;
  RateControlResult result;

  auto distortion = [&](double delta) {
    ++result.evaluations;
    const auto rec = prepared.reconstruct(delta);
    return options.metric == Metric::prd ? prd(original, rec) : prd_b(original, rec, options.baseline);
  };

  double best_delta = options.delta_min;
  double best_error = std::numeric_limits<double>::infinity();
  auto consider = [&](double delta, double d) {
    const double err = std::abs(d - target);
    if (err < best_error || (err == best_error && delta > best_delta)) {
      best_error = err;
      best_delta = delta;
    }
    return err <= options.tolerance;
  };

  auto finish = [&](double delta) {
    result.delta = delta;
    result.report = evaluate(prepared, delta, options.baseline);
    const double achieved = options.metric == Metric::prd ? result.report.prd : result.report.prd_b;
    result.target_met = target > 0.0 && std::abs(achieved - target) <= options.tolerance;
    return result;
  };

  // A lossy target of zero (or below) is not a meaningful request.
  if (!(target > 0.0)) return finish(options.delta_min);

  double lo = options.delta_min;
  double hi = options.delta_max;
  const double d_lo = distortion(lo);
  if (consider(lo, d_lo)) return finish(lo);
  if (d_lo > target) return finish(lo);
  const double d_hi = distortion(hi);
  if (consider(hi, d_hi)) return finish(hi);
  if (d_hi < target) return finish(hi);

  // Invariant: distortion(lo) < target < distortion(hi).
  for (int it = 0; it < options.max_iterations; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    const double d = distortion(mid);
    if (consider(mid, d)) return finish(mid);
    (d < target ? lo : hi) = mid;
  }

  // Staircase fallback: scan a widened bracket.
  const double a = std::log(std::max(options.delta_min, lo / 1.1));
  const double b = std::log(std::min(options.delta_max, hi * 1.1));
  for (int i = 0; i < options.scan_points; ++i) {
    const double delta = std::exp(a + (b - a) * (i + 0.5) / options.scan_points);
    if (consider(delta, distortion(delta))) return finish(delta);
  }
  return finish(best_delta);
}

RateControlResult find_delta(const EcgRecord& record, double target, Mode mode, const RateControlOptions& options) {
  EncodeOptions opt;
  opt.mode = mode;
  return find_delta(PreparedRecord(record, opt), target, options);
}

std::string metric_name(Metric metric) { return metric == Metric::prd ? "prd" : "prdb"; }

Metric parse_metric(std::string_view name) {
  if (name == "prd") return Metric::prd;
  if (name == "prdb" || name == "prd_b") return Metric::prd_b;
  throw ArgumentError("unknown metric '" + std::string(name) + "' (expected prd or prdb)");
}

}  // namespace ecgz
