#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ecgz {

/// CDF 9/7 lifting constants. The scaling puts both bands at gain sqrt(2),
/// which keeps the transform close to orthogonal.
namespace cdf97 {
inline constexpr double alpha = -1.5861343420693648;
inline constexpr double beta = -0.0529801185718856;
inline constexpr double gamma = 0.8829110755411875;
inline constexpr double delta = 0.4435068520511142;
inline constexpr double zeta = 1.1496043988602418;
}  // namespace cdf97

/// Decomposition layout. `band_lengths[j]` is the input length at level j
/// (band_lengths[0] = signal_length), each following one being ceil(prev / 2).
struct WaveletPlan {
  int levels = 0;
  std::size_t signal_length = 0;
  std::vector<std::size_t> band_lengths;

  /// Half-open ranges in output order: approximation, then detail bands
  /// from coarsest to finest. They partition [0, signal_length).
  std::vector<std::pair<std::size_t, std::size_t>> subband_bounds() const;

  friend bool operator==(const WaveletPlan&, const WaveletPlan&) = default;
};

/// Levels actually used for a signal of `length`: the request when
/// length >= 2^requested, otherwise max(1, floor(log2(length)) - 1).
/// A length-1 signal gets 0 levels (identity).
int effective_levels(std::size_t length, int requested);

WaveletPlan make_wavelet_plan(std::size_t length, int requested_levels);

struct WaveletCoefficients {
  std::vector<double> coefficients;  // [approx_L | detail_L | ... | detail_1]
  WaveletPlan plan;
};

WaveletCoefficients dwt97_forward(std::span<const double> signal, int levels);
std::vector<double> dwt97_inverse(std::span<const double> coefficients, const WaveletPlan& plan);

// Batched forms. `data` holds plan.signal_length consecutive blocks of
// `width` values; lane w of every block forms one independent signal. The
// row transform of a column-major matrix is the case width = rows.
void dwt97_forward_blocks(std::span<double> data, std::size_t width, const WaveletPlan& plan);
void dwt97_inverse_blocks(std::span<double> data, std::size_t width, const WaveletPlan& plan);

}  // namespace ecgz
