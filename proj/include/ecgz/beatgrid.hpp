#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecgz/matrix.hpp"
#include "ecgz/qrs.hpp"
#include "ecgz/record.hpp"

namespace ecgz {

/// Heartbeats stacked as rows of a zero-padded matrix. Every beat row starts
/// at its R peak (column 0); samples before the first peak form a leading
/// row of their own. Values are mean-removed.
struct BeatMatrix {
  Matrix beats;                             // N x M, M = max(beat_lengths)
  std::vector<std::uint32_t> beat_lengths;  // h; sums to the record length
  double mean = 0.0;

  std::size_t rows() const noexcept { return beats.rows(); }
  std::size_t cols() const noexcept { return beats.cols(); }
};

BeatMatrix segment(const EcgRecord& record, const RPeakList& peaks);

/// Concatenates the first h[i] entries of each row and adds the mean back.
std::vector<double> reassemble(std::span<const std::uint32_t> beat_lengths, double mean, const Matrix& reconstructed);
std::vector<double> reassemble(const BeatMatrix& grid, const Matrix& reconstructed);

/// Round to nearest integer (halves away from zero), saturating to int32.
std::vector<std::int32_t> round_samples(std::span<const double> values);

}  // namespace ecgz
