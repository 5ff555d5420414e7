#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ecgz {

/// MSB-first bit packer.
class BitWriter {
 public:
  void put(std::uint64_t value, int nbits);
  void put_bit(bool bit) { put(bit ? 1u : 0u, 1); }
  /// Elias gamma code of v >= 1.
  void put_gamma(std::uint64_t v);
  void align();

  std::uint64_t bit_count() const noexcept { return bits_; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  std::vector<std::uint8_t> take() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bits_ = 0;
};

/// MSB-first reader over a bounded bit range. Reading past the end throws CorruptStream.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : BitReader(bytes, std::uint64_t{bytes.size()} * 8) {}
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit);

  std::uint64_t get(int nbits);
  bool get_bit();
  std::uint64_t get_gamma();

  std::uint64_t position() const noexcept { return pos_; }
  std::uint64_t remaining() const noexcept { return limit_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t limit_;
  std::uint64_t pos_ = 0;
};

}  // namespace ecgz
