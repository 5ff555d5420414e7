#include "ecgz/beatgrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ecgz/error.hpp"

namespace ecgz {

BeatMatrix segment(const EcgRecord& record, const RPeakList& peaks) {
  const auto& x = record.samples;
  if (x.empty()) throw ArgumentError("cannot segment an empty record");
  if (peaks.empty()) throw SegmentationError("no R peaks to segment on");
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    if (peaks[i] >= x.size() || (i > 0 && peaks[i] <= peaks[i - 1])) {
      throw SegmentationError("peak list must be strictly increasing and inside the record");
    }
  }

  std::vector<std::size_t> starts;
  if (peaks.front() > 0) starts.push_back(0);
  starts.insert(starts.end(), peaks.indices.begin(), peaks.indices.end());

  BeatMatrix grid;
  grid.beat_lengths.reserve(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const std::size_t end = i + 1 < starts.size() ? starts[i + 1] : x.size();
    grid.beat_lengths.push_back(static_cast<std::uint32_t>(end - starts[i]));
  }
  const std::size_t width = *std::max_element(grid.beat_lengths.begin(), grid.beat_lengths.end());

  double sum = 0.0;
  for (auto v : x) sum += v;
  grid.mean = sum / static_cast<double>(x.size());

  grid.beats = Matrix(starts.size(), width);
  for (std::size_t r = 0; r < starts.size(); ++r) {
    for (std::size_t c = 0; c < grid.beat_lengths[r]; ++c) grid.beats(r, c) = x[starts[r] + c] - grid.mean;
  }
  return grid;
}

std::vector<double> reassemble(std::span<const std::uint32_t> beat_lengths, double mean, const Matrix& reconstructed) {
  if (beat_lengths.size() != reconstructed.rows()) {
    throw ArgumentError("reassemble: " + std::to_string(beat_lengths.size()) + " beat lengths for " +
                        std::to_string(reconstructed.rows()) + " rows");
  }
  std::size_t total = 0;
  std::uint32_t longest = 0;
  for (auto h : beat_lengths) {
    if (h == 0) throw ArgumentError("reassemble: zero beat length");
    total += h;
    longest = std::max(longest, h);
  }
  if (longest != reconstructed.cols()) {
    throw ArgumentError("reassemble: " + std::to_string(reconstructed.cols()) + " columns for longest beat " +
                        std::to_string(longest));
  }
  std::vector<double> out;
  out.reserve(total);
  for (std::size_t r = 0; r < beat_lengths.size(); ++r) {
    for (std::size_t c = 0; c < beat_lengths[r]; ++c) out.push_back(reconstructed(r, c) + mean);
  }
  return out;
}

std::vector<double> reassemble(const BeatMatrix& grid, const Matrix& reconstructed) {
  if (reconstructed.rows() != grid.rows() || reconstructed.cols() != grid.cols()) {
    throw ArgumentError("reassemble: matrix dimensions differ from the beat grid");
  }
  return reassemble(grid.beat_lengths, grid.mean, reconstructed);
}

std::vector<std::int32_t> round_samples(std::span<const double> values) {
  constexpr double lo = std::numeric_limits<std::int32_t>::min();
  constexpr double hi = std::numeric_limits<std::int32_t>::max();
  std::vector<std::int32_t> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = std::round(values[i]);
    out[i] = std::isnan(r) ? 0 : static_cast<std::int32_t>(std::clamp(r, lo, hi));
  }
  return out;
}

}  // namespace ecgz
