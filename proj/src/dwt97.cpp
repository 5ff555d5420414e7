#include "ecgz/dwt97.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <string>

#include "ecgz/error.hpp"
#include "ecgz/simd/kernels.hpp"

namespace ecgz {

namespace {

// Odd-indexed samples x[2i+1] += c * (x[2i] + x[2i+2]), with x[n] mirrored to x[n-2].
void predict(const simd::KernelTable& k, double* s, double* d, std::size_t ns, std::size_t nd, std::size_t w,
             double c) {
  const std::size_t interior = (ns > nd) ? nd : nd - 1;
  k.lift(d, s, s + w, c, interior * w);
  if (interior < nd) {
    const std::size_t i = nd - 1;
    k.lift(d + i * w, s + i * w, s + i * w, c, w);
  }
}

// Even-indexed samples x[2i] += c * (x[2i-1] + x[2i+1]), with x[-1] = x[1] and x[n] = x[n-2].
void update(const simd::KernelTable& k, double* s, double* d, std::size_t ns, std::size_t nd, std::size_t w,
            double c) {
  k.lift(s, d, d, c, w);
  if (ns == 1) return;
  if (ns == nd) {
    k.lift(s + w, d, d + w, c, (ns - 1) * w);
  } else {
    k.lift(s + w, d, d + w, c, (ns - 2) * w);
    k.lift(s + (ns - 1) * w, d + (ns - 2) * w, d + (ns - 2) * w, c, w);
  }
}

void check_blocks(std::span<double> data, std::size_t width, const WaveletPlan& plan) {
  if (width == 0) throw ArgumentError("wavelet block width must be positive");
  if (data.size() != plan.signal_length * width) {
    throw ArgumentError("wavelet data size " + std::to_string(data.size()) + " does not match plan length " +
                        std::to_string(plan.signal_length) + " x width " + std::to_string(width));
  }
  if (plan.band_lengths.size() != static_cast<std::size_t>(plan.levels) + 1 ||
      (plan.levels > 0 && plan.band_lengths.front() != plan.signal_length)) {
    throw ArgumentError("inconsistent wavelet plan");
  }
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> WaveletPlan::subband_bounds() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (levels == 0) {
    out.emplace_back(0, signal_length);
    return out;
  }
  out.emplace_back(0, band_lengths[levels]);
  for (int j = levels; j >= 1; --j) out.emplace_back(band_lengths[j], band_lengths[j - 1]);
  return out;
}

int effective_levels(std::size_t length, int requested) {
  if (requested < 1) throw ArgumentError("wavelet levels must be >= 1, got " + std::to_string(requested));
  if (length == 0) throw ArgumentError("wavelet transform of an empty signal");
  if (length == 1) return 0;
  if (requested < 63 && length >= (std::size_t{1} << requested)) return requested;
  const int log2_floor = static_cast<int>(std::bit_width(length)) - 1;
  return std::max(1, log2_floor - 1);
}

WaveletPlan make_wavelet_plan(std::size_t length, int requested_levels) {
  WaveletPlan plan;
  plan.levels = effective_levels(length, requested_levels);
  plan.signal_length = length;
  plan.band_lengths.push_back(length);
  for (int j = 0; j < plan.levels; ++j) plan.band_lengths.push_back((plan.band_lengths.back() + 1) / 2);
  return plan;
}

void dwt97_forward_blocks(std::span<double> data, std::size_t width, const WaveletPlan& plan) {
  check_blocks(data, width, plan);
  const auto& k = simd::active();
  std::vector<double> scratch((plan.signal_length / 2) * width);
  for (int level = 0; level < plan.levels; ++level) {
    const std::size_t n = plan.band_lengths[level];
    const std::size_t ns = (n + 1) / 2;
    const std::size_t nd = n / 2;
    double* base = data.data();

    // Split into [even | odd] blocks.
    for (std::size_t i = 0; i < nd; ++i) std::memcpy(&scratch[i * width], base + (2 * i + 1) * width, width * sizeof(double));
    for (std::size_t i = 1; i < ns; ++i) std::memmove(base + i * width, base + 2 * i * width, width * sizeof(double));
    double* s = base;
    double* d = base + ns * width;
    std::memcpy(d, scratch.data(), nd * width * sizeof(double));

    predict(k, s, d, ns, nd, width, cdf97::alpha);
    update(k, s, d, ns, nd, width, cdf97::beta);
    predict(k, s, d, ns, nd, width, cdf97::gamma);
    update(k, s, d, ns, nd, width, cdf97::delta);
    k.scale(s, cdf97::zeta, ns * width);
    k.scale(d, 1.0 / cdf97::zeta, nd * width);
  }
}

void dwt97_inverse_blocks(std::span<double> data, std::size_t width, const WaveletPlan& plan) {
  check_blocks(data, width, plan);
  const auto& k = simd::active();
  std::vector<double> scratch((plan.signal_length / 2) * width);
  for (int level = plan.levels - 1; level >= 0; --level) {
    const std::size_t n = plan.band_lengths[level];
    const std::size_t ns = (n + 1) / 2;
    const std::size_t nd = n / 2;
    double* base = data.data();
    double* s = base;
    double* d = base + ns * width;

    k.scale(s, 1.0 / cdf97::zeta, ns * width);
    k.scale(d, cdf97::zeta, nd * width);
    update(k, s, d, ns, nd, width, -cdf97::delta);
    predict(k, s, d, ns, nd, width, -cdf97::gamma);
    update(k, s, d, ns, nd, width, -cdf97::beta);
    predict(k, s, d, ns, nd, width, -cdf97::alpha);

    // Merge back to interleaved order; walk evens downward so nothing is overwritten early.
    std::memcpy(scratch.data(), d, nd * width * sizeof(double));
    for (std::size_t i = ns; i-- > 1;) std::memmove(base + 2 * i * width, base + i * width, width * sizeof(double));
    for (std::size_t i = 0; i < nd; ++i) std::memcpy(base + (2 * i + 1) * width, &scratch[i * width], width * sizeof(double));
  }
}

WaveletCoefficients dwt97_forward(std::span<const double> signal, int levels) {
  if (signal.empty()) throw ArgumentError("wavelet transform of an empty signal");
  WaveletCoefficients out{{signal.begin(), signal.end()}, make_wavelet_plan(signal.size(), levels)};
  dwt97_forward_blocks(out.coefficients, 1, out.plan);
  return out;
}

std::vector<double> dwt97_inverse(std::span<const double> coefficients, const WaveletPlan& plan) {
  if (coefficients.size() != plan.signal_length) {
    throw ArgumentError("coefficient count " + std::to_string(coefficients.size()) + " does not match plan length " +
                        std::to_string(plan.signal_length));
  }
  if (plan.signal_length == 0) throw ArgumentError("empty wavelet plan");
  const auto expected = make_wavelet_plan(plan.signal_length, std::max(plan.levels, 1));
  if (expected.levels != plan.levels || expected.band_lengths != plan.band_lengths) {
    throw ArgumentError("inconsistent wavelet plan");
  }
  std::vector<double> out(coefficients.begin(), coefficients.end());
  dwt97_inverse_blocks(out, 1, plan);
  return out;
}

}  // namespace ecgz
