#pragma once

#include "ecgz/beatgrid.hpp"
#include "ecgz/dct.hpp"
#include "ecgz/dwt97.hpp"
#include "ecgz/matrix.hpp"

namespace ecgz {

/// Coefficients of the mixed transform: DCT down each column (across
/// beats), then CDF 9/7 along each row (within beats).
struct TransformedMatrix {
  Matrix coefficients;
  WaveletPlan row_plan;
};

TransformedMatrix mixed_forward(const Matrix& beats, int levels);
TransformedMatrix mixed_forward(const BeatMatrix& grid, int levels);

/// Exact inverse. The two 1D transforms act on different axes and commute,
/// so the column DCT is undone first while the coefficients are still sparse.
Matrix mixed_inverse(const TransformedMatrix& tm);
Matrix mixed_inverse(const TransformedMatrix& tm, const DctPlan& inverse_columns);
Matrix mixed_inverse(Matrix coefficients, const WaveletPlan& row_plan, const DctPlan& inverse_columns);

/// Separable 2D CDF 9/7 (full row decomposition, then full column
/// decomposition). Diagnostic only; not used by the codec.
Matrix dwt97_2d_forward(const Matrix& m, int levels);

}  // namespace ecgz
