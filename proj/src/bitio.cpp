#include "ecgz/bitio.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ecgz/error.hpp"

namespace ecgz {

void BitWriter::put(std::uint64_t value, int nbits) {
  for (int i = nbits - 1; i >= 0; --i) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
  }
}

void BitWriter::put_gamma(std::uint64_t v) {
  if (v == 0) throw ArgumentError("Elias gamma code needs a positive value");
  const int width = static_cast<int>(std::bit_width(v));
  put(0, width - 1);
  put(v, width);
}

void BitWriter::align() {
  bits_ = (bits_ + 7) / 8 * 8;
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit)
    : bytes_(bytes), limit_(std::min<std::uint64_t>(bit_limit, std::uint64_t{bytes.size()} * 8)) {}

bool BitReader::get_bit() {
  if (pos_ >= limit_) throw CorruptStream("bit underrun at bit " + std::to_string(pos_));
  const bool bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::get(int nbits) {
  if (static_cast<std::uint64_t>(nbits) > remaining()) {
    throw CorruptStream("bit underrun: need " + std::to_string(nbits) + " bits at bit " + std::to_string(pos_));
  }
  std::uint64_t v = 0;
  for (int i = 0; i < nbits; ++i) v = (v << 1) | (get_bit() ? 1u : 0u);
  return v;
}

std::uint64_t BitReader::get_gamma() {
  int zeros = 0;
  while (!get_bit()) {
    if (++zeros > 63) throw CorruptStream("Elias gamma prefix too long");
  }
  return (std::uint64_t{1} << zeros) | get(zeros);
}

}  // namespace ecgz
