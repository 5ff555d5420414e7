#include "ecgz/mixed.hpp"

#include <string>

#include "ecgz/error.hpp"

namespace ecgz {

TransformedMatrix mixed_forward(const Matrix& beats, int levels) {
  if (beats.rows() < 1 || beats.cols() < 2) {
    throw ArgumentError("mixed transform needs at least 1 row and 2 columns, got " + std::to_string(beats.rows()) +
                        "x" + std::to_string(beats.cols()));
  }
  TransformedMatrix tm{beats, make_wavelet_plan(beats.cols(), levels)};
  DctPlan(beats.rows(), DctDirection::forward).apply_columns(tm.coefficients);
  dwt97_forward_blocks(tm.coefficients.data(), tm.coefficients.rows(), tm.row_plan);
  return tm;
}

TransformedMatrix mixed_forward(const BeatMatrix& grid, int levels) { return mixed_forward(grid.beats, levels); }

Matrix mixed_inverse(Matrix coefficients, const WaveletPlan& row_plan, const DctPlan& inverse_columns) {
  if (row_plan.signal_length != coefficients.cols()) {
    throw ArgumentError("row plan length " + std::to_string(row_plan.signal_length) + " does not match " +
                        std::to_string(coefficients.cols()) + " columns");
  }
  if (inverse_columns.direction() != DctDirection::inverse || inverse_columns.length() != coefficients.rows()) {
    throw ArgumentError("column plan does not match the coefficient matrix");
  }
  inverse_columns.apply_columns(coefficients);
  dwt97_inverse_blocks(coefficients.data(), coefficients.rows(), row_plan);
  return coefficients;
}

Matrix mixed_inverse(const TransformedMatrix& tm, const DctPlan& inverse_columns) {
  return mixed_inverse(tm.coefficients, tm.row_plan, inverse_columns);
}

Matrix mixed_inverse(const TransformedMatrix& tm) {
  if (tm.coefficients.rows() == 0) throw ArgumentError("empty transformed matrix");
  return mixed_inverse(tm, DctPlan(tm.coefficients.rows(), DctDirection::inverse));
}

Matrix dwt97_2d_forward(const Matrix& m, int levels) {
  if (m.rows() < 1 || m.cols() < 1) throw ArgumentError("2D DWT of an empty matrix");
  Matrix rows_done = m;
  dwt97_forward_blocks(rows_done.data(), rows_done.rows(), make_wavelet_plan(m.cols(), levels));
  // Column-major transpose turns columns into blocks of width cols.
  Matrix t = rows_done.transposed();
  dwt97_forward_blocks(t.data(), t.rows(), make_wavelet_plan(m.rows(), levels));
  return t.transposed();
}

}  // namespace ecgz
