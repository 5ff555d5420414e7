#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ecgz {

/// Sparse description of a quantized coefficient vector.
///   magnitudes:   |q| at nonzero positions, ascending position order
///   signs:        1 for positive, 0 for negative
///   gaps:         first 1-based position, then successive differences
///   beat_lengths: h, carried alongside (empty in 1D mode)
struct SymbolStreams {
  std::vector<std::uint32_t> magnitudes;
  std::vector<std::uint32_t> signs;
  std::vector<std::uint32_t> gaps;
  std::vector<std::uint32_t> beat_lengths;
  std::uint64_t total_length = 0;

  std::size_t nonzero_count() const noexcept { return magnitudes.size(); }
  friend bool operator==(const SymbolStreams&, const SymbolStreams&) = default;
};

/// `q` is the column-major flattening of the quantized coefficients.
SymbolStreams build_streams(std::span<const std::int64_t> q, std::span<const std::uint32_t> beat_lengths);

/// 1-based ascending positions recovered by summing the gaps. Validates the
/// stream invariants and throws CorruptStream on violation.
std::vector<std::uint64_t> positions(const SymbolStreams& streams);

/// Dense reconstruction: zero everywhere, (2s - 1) * c * delta at the coded positions.
std::vector<double> scatter(const SymbolStreams& streams, double delta);

}  // namespace ecgz
