#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ecgz/matrix.hpp"

namespace ecgz {

enum class DctDirection { forward, inverse };

/// Orthonormal DCT-II (forward) or DCT-III (inverse) of a fixed length,
/// evaluated as a dense basis product:
///   X[k] = w(k) * sum_n x[n] cos(pi (2n+1) k / 2L),  w(0) = sqrt(1/L), w(k>0) = sqrt(2/L).
/// The basis is stored input-major so each input sample scales one
/// contiguous row; zero inputs are skipped, which makes inverting sparse
/// coefficient columns cheap.
class DctPlan {
 public:
  DctPlan(std::size_t length, DctDirection direction);

  std::size_t length() const noexcept { return length_; }
  DctDirection direction() const noexcept { return direction_; }

  void apply(std::span<const double> in, std::span<double> out) const;
  /// Transforms every column of `m` (which must have `length()` rows).
  void apply_columns(Matrix& m) const;

 private:
  std::size_t length_;
  DctDirection direction_;
  std::vector<double> basis_;  // basis_[j * length_ + i]: weight of input j in output i
};

std::vector<double> dct_forward(std::span<const double> column);
std::vector<double> dct_inverse(std::span<const double> coefficients);

}  // namespace ecgz
