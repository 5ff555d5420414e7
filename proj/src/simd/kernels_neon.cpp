// AArch64 only; Advanced SIMD is mandatory there so no runtime probe is needed.
#include <arm_neon.h>

#include <cmath>

#include "ecgz/simd/kernels.hpp"

namespace ecgz::simd {

namespace {

void lift(double* dst, const double* a, const double* b, double coef, std::size_t n) {
  const float64x2_t c = vdupq_n_f64(coef);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t s = vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vmulq_f64(c, s)));
  }
  for (; i < n; ++i) dst[i] = dst[i] + coef * (a[i] + b[i]);
}

void scale(double* x, double factor, std::size_t n) {
  const float64x2_t f = vdupq_n_f64(factor);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), f));
  for (; i < n; ++i) x[i] = x[i] * factor;
}

void accumulate(double* out, const double* row, double weight, std::size_t n) {
  const float64x2_t w = vdupq_n_f64(weight);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), vmulq_f64(vld1q_f64(row + i), w)));
  }
  for (; i < n; ++i) out[i] = out[i] + row[i] * weight;
}

void quantize(const double* b, double delta, double* out, std::size_t n) {
  const float64x2_t d = vdupq_n_f64(delta);
  const float64x2_t half = vdupq_n_f64(0.5);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vrndmq_f64(vaddq_f64(vdivq_f64(vld1q_f64(b + i), d), half)));
  }
  for (; i < n; ++i) out[i] = std::floor(b[i] / delta + 0.5);
}

}  // namespace

const KernelTable& neon_kernels() {
  static const KernelTable table{Isa::neon, lift, scale, accumulate, quantize};
  return table;
}

}  // namespace ecgz::simd
