#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ecgz {

/// Mid-tread uniform quantizer: q = floor(b / delta + 1/2).
std::vector<std::int64_t> quantize(std::span<const double> b, double delta);

/// Reconstruction levels floor(b / delta + 1/2) * delta, written to `out`.
/// Matches dequantizing the symbol streams bit for bit.
void quantize_reconstruct(std::span<const double> b, double delta, std::span<double> out);

}  // namespace ecgz
