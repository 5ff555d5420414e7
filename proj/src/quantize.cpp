#include "ecgz/quantize.hpp"

#include <cmath>
#include <string>

#include "ecgz/error.hpp"
#include "ecgz/simd/kernels.hpp"

namespace ecgz {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ArgumentError("quantization step must be a positive finite number, got " + std::to_string(delta));
  }
}

}  // namespace

std::vector<std::int64_t> quantize(std::span<const double> b, double delta) {
  check_delta(delta);
  std::vector<double> levels(b.size());
  simd::active().quantize(b.data(), delta, levels.data(), b.size());
  constexpr double limit = 9007199254740992.0;  // 2^53
  std::vector<std::int64_t> q(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(std::abs(levels[i]) < limit)) {
      throw ArgumentError("quantized value out of range at index " + std::to_string(i) + " (step too small?)");
    }
    q[i] = static_cast<std::int64_t>(levels[i]);
  }
  return q;
}

void quantize_reconstruct(std::span<const double> b, double delta, std::span<double> out) {
  check_delta(delta);
  if (out.size() != b.size()) throw ArgumentError("quantize_reconstruct: size mismatch");
  const auto& k = simd::active();
  k.quantize(b.data(), delta, out.data(), b.size());
  k.scale(out.data(), delta, out.size());
}

}  // namespace ecgz
