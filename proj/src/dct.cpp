#include "ecgz/dct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ecgz/error.hpp"
#include "ecgz/simd/kernels.hpp"

namespace ecgz {

namespace {

// Output tile width for apply_columns; keeps the active slice of the basis cache-resident.
constexpr std::size_t kTile = 256;

}  // namespace

DctPlan::DctPlan(std::size_t length, DctDirection direction)
    : length_(length), direction_(direction), basis_(length * length) {
  if (length == 0) throw ArgumentError("DCT length must be positive");
  const double w0 = std::sqrt(1.0 / static_cast<double>(length));
  const double wk = std::sqrt(2.0 / static_cast<double>(length));
  const std::size_t period = 4 * length;
  for (std::size_t k = 0; k < length; ++k) {
    const double w = k == 0 ? w0 : wk;
    for (std::size_t n = 0; n < length; ++n) {
      // Reduce the angle exactly in integers before converting.
      const std::size_t m = ((2 * n + 1) * k) % period;
      const double v = w * std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(2 * length));
      if (direction == DctDirection::forward) {
        basis_[n * length + k] = v;
      } else {
        basis_[k * length + n] = v;
      }
    }
  }
}

void DctPlan::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != length_ || out.size() != length_) {
    throw ArgumentError("DCT plan of length " + std::to_string(length_) + " applied to " +
                        std::to_string(in.size()) + " -> " + std::to_string(out.size()) + " values");
  }
  const auto& k = simd::active();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < length_; ++j) {
    if (in[j] != 0.0) k.accumulate(out.data(), &basis_[j * length_], in[j], length_);
  }
}

void DctPlan::apply_columns(Matrix& m) const {
  if (m.rows() != length_) {
    throw ArgumentError("DCT plan of length " + std::to_string(length_) + " applied to matrix with " +
                        std::to_string(m.rows()) + " rows");
  }
  const auto& k = simd::active();
  Matrix out(m.rows(), m.cols());
  // Tile over outputs so one slice of the basis is reused by every column.
  for (std::size_t i0 = 0; i0 < length_; i0 += kTile) {
    const std::size_t span = std::min(kTile, length_ - i0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto col = m.column(c);
      double* dst = out.column(c).data() + i0;
      for (std::size_t j = 0; j < length_; ++j) {
        if (col[j] != 0.0) k.accumulate(dst, &basis_[j * length_ + i0], col[j], span);
      }
    }
  }
  m = std::move(out);
}

std::vector<double> dct_forward(std::span<const double> column) {
  if (column.empty()) throw ArgumentError("DCT of an empty sequence");
  std::vector<double> out(column.size());
  DctPlan(column.size(), DctDirection::forward).apply(column, out);
  return out;
}

std::vector<double> dct_inverse(std::span<const double> coefficients) {
  if (coefficients.empty()) throw ArgumentError("inverse DCT of an empty sequence");
  std::vector<double> out(coefficients.size());
  DctPlan(coefficients.size(), DctDirection::inverse).apply(coefficients, out);
  return out;
}

}  // namespace ecgz
