// Compiled with -mavx2 (and without -mfma); only reached after a CPUID check.
#include <immintrin.h>

#include <cmath>

#include "ecgz/simd/kernels.hpp"

namespace ecgz::simd {

namespace {

void lift(double* dst, const double* a, const double* b, double coef, std::size_t n) {
  const __m256d c = _mm256_set1_pd(coef);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d s0 = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    __m256d s1 = _mm256_add_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_mul_pd(c, s0)));
    _mm256_storeu_pd(dst + i + 4, _mm256_add_pd(_mm256_loadu_pd(dst + i + 4), _mm256_mul_pd(c, s1)));
  }
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_mul_pd(c, s)));
  }
  for (; i < n; ++i) dst[i] = dst[i] + coef * (a[i] + b[i]);
}

void scale(double* x, double factor, std::size_t n) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), f));
  for (; i < n; ++i) x[i] = x[i] * factor;
}

void accumulate(double* out, const double* row, double weight, std::size_t n) {
  const __m256d w = _mm256_set1_pd(weight);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(row + i), w);
    __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(row + i + 4), w);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), p0));
    _mm256_storeu_pd(out + i + 4, _mm256_add_pd(_mm256_loadu_pd(out + i + 4), p1));
  }
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_mul_pd(_mm256_loadu_pd(row + i), w)));
  }
  for (; i < n; ++i) out[i] = out[i] + row[i] * weight;
}

void quantize(const double* b, double delta, double* out, std::size_t n) {
  const __m256d d = _mm256_set1_pd(delta);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d q = _mm256_add_pd(_mm256_div_pd(_mm256_loadu_pd(b + i), d), half);
    _mm256_storeu_pd(out + i, _mm256_floor_pd(q));
  }
  for (; i < n; ++i) out[i] = std::floor(b[i] / delta + 0.5);
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::avx2, lift, scale, accumulate, quantize};
  return table;
}

}  // namespace ecgz::simd
