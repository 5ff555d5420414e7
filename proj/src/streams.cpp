#include "ecgz/streams.hpp"

#include <cstdlib>
#include <string>

#include "ecgz/error.hpp"

namespace ecgz {

SymbolStreams build_streams(std::span<const std::int64_t> q, std::span<const std::uint32_t> beat_lengths) {
  constexpr std::uint64_t max32 = 0xFFFFFFFFull;
  if (q.size() > max32) throw ArgumentError("coefficient vector too long for 32-bit positions");
  SymbolStreams st;
  st.total_length = q.size();
  st.beat_lengths.assign(beat_lengths.begin(), beat_lengths.end());
  std::uint64_t previous = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    const std::uint64_t mag = static_cast<std::uint64_t>(q[i] < 0 ? -q[i] : q[i]);
    if (mag > max32) {
      throw ArgumentError("quantized magnitude " + std::to_string(mag) + " exceeds the 32-bit escape range");
    }
    const std::uint64_t pos = i + 1;
    st.magnitudes.push_back(static_cast<std::uint32_t>(mag));
    st.signs.push_back(q[i] > 0 ? 1u : 0u);
    st.gaps.push_back(static_cast<std::uint32_t>(pos - previous));
    previous = pos;
  }
  return st;
}

std::vector<std::uint64_t> positions(const SymbolStreams& streams) {
  const std::size_t k = streams.magnitudes.size();
  if (streams.signs.size() != k || streams.gaps.size() != k) {
    throw CorruptStream("stream lengths disagree (" + std::to_string(k) + " magnitudes, " +
                        std::to_string(streams.signs.size()) + " signs, " + std::to_string(streams.gaps.size()) +
                        " gaps)");
  }
  std::vector<std::uint64_t> pos(k);
  std::uint64_t at = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (streams.gaps[i] == 0) throw CorruptStream("zero gap at entry " + std::to_string(i));
    if (streams.magnitudes[i] == 0) throw CorruptStream("zero magnitude at entry " + std::to_string(i));
    if (streams.signs[i] > 1) throw CorruptStream("sign symbol out of range");
    at += streams.gaps[i];
    if (at > streams.total_length) throw CorruptStream("position beyond coefficient count");
    pos[i] = at;
  }
  return pos;
}

std::vector<double> scatter(const SymbolStreams& streams, double delta) {
  const auto pos = positions(streams);
  std::vector<double> out(streams.total_length, 0.0);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const double signed_level = streams.signs[i] ? double(streams.magnitudes[i]) : -double(streams.magnitudes[i]);
    out[pos[i] - 1] = signed_level * delta;
  }
  return out;
}

}  // namespace ecgz
