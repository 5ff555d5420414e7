#include <cmath>

#include "ecgz/simd/kernels.hpp"

namespace ecgz::simd {

namespace {

void lift(double* dst, const double* a, const double* b, double coef, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = dst[i] + coef * (a[i] + b[i]);
}

void scale(double* x, double factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] * factor;
}

void accumulate(double* out, const double* row, double weight, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + row[i] * weight;
}

void quantize(const double* b, double delta, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::floor(b[i] / delta + 0.5);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, lift, scale, accumulate, quantize};
  return table;
}

}  // namespace ecgz::simd
