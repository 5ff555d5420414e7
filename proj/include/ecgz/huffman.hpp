#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecgz/bitio.hpp"

namespace ecgz {

namespace huffman {
/// Values up to this limit are their own symbol.
inline constexpr std::uint32_t kDirectLimit = 1u << 15;
/// Larger values are sent as this symbol followed by 32 raw bits.
inline constexpr std::uint32_t kEscape = kDirectLimit + 1;
inline constexpr int kMaxCodeLength = 63;
}  // namespace huffman

/// Canonical Huffman code described by per-symbol code lengths (0 = unused).
/// Codes are assigned in (length, symbol) order.
class Codebook {
 public:
  Codebook() = default;
  explicit Codebook(std::vector<std::uint8_t> lengths);

  /// Optimal code for the symbol frequencies of `values`. A single-symbol
  /// alphabet gets a 1-bit code.
  static Codebook build(std::span<const std::uint32_t> values);

  bool empty() const noexcept { return sorted_.empty(); }
  const std::vector<std::uint8_t>& lengths() const noexcept { return lengths_; }
  std::uint32_t max_symbol() const noexcept { return lengths_.empty() ? 0 : std::uint32_t(lengths_.size() - 1); }

  /// max symbol (16 bits), then (length: 6 bits, run: Elias gamma) pairs.
  void write(BitWriter& out) const;
  static Codebook read(BitReader& in);

  void encode(BitWriter& out, std::span<const std::uint32_t> values) const;
  std::vector<std::uint32_t> decode(BitReader& in, std::size_t count) const;

  friend bool operator==(const Codebook& a, const Codebook& b) { return a.lengths_ == b.lengths_; }

 private:
  void assign_codes();

  std::vector<std::uint8_t> lengths_;
  std::vector<std::uint64_t> codes_;
  std::vector<std::uint32_t> sorted_;       // symbols in canonical order
  std::vector<std::uint64_t> first_code_;   // per length
  std::vector<std::uint32_t> first_index_;  // per length, into sorted_
  std::vector<std::uint32_t> count_;        // per length
};

/// Stand-alone coded payload: codebook plus code bits (not byte-padded).
struct HuffmanPayload {
  Codebook codebook;
  std::vector<std::uint8_t> bits;
  std::uint64_t bit_count = 0;
};

HuffmanPayload huffman_encode(std::span<const std::uint32_t> values);
std::vector<std::uint32_t> huffman_decode(std::span<const std::uint8_t> bits, std::uint64_t bit_count,
                                          const Codebook& codebook, std::size_t count);

}  // namespace ecgz
