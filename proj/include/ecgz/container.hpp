#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecgz/streams.hpp"

namespace ecgz {

enum class Mode : std::uint8_t { one_d = 1, two_d = 2 };

/// Fixed 44-byte little-endian header:
///   0  "ECGZ"            4  version (1)      5  mode (1 = 1D, 2 = 2D)
///   6  flags             7  wavelet levels   8  transform id (1)
///   9  ADC bits          10 reserved (2)     12 sampling rate (f64)
///   20 delta (f64)       28 mean (f64)       36 rows (u32)   40 cols (u32)
/// followed by the MSB-first payload (magnitudes, signs, gaps, beat lengths;
/// each a 32-bit count then, if nonzero, codebook and codes), zero padding
/// to a byte boundary, and a CRC-32 (LE) of everything before it.
struct FileHeader {
  Mode mode = Mode::two_d;
  bool fell_back_to_1d = false;
  int levels = 0;
  double sampling_rate = 360.0;
  int adc_bits = 11;
  double delta = 1.0;
  double mean = 0.0;
  std::uint32_t rows = 0;  // 1 in 1D mode
  std::uint32_t cols = 0;  // record length in 1D mode

  friend bool operator==(const FileHeader&, const FileHeader&) = default;
};

namespace container {
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 44;
/// CDF 9/7 lifting, whole-sample symmetric boundaries, approximation band
/// ceil(L/2); orthonormal DCT-II/III along columns; head segment is row 0.
inline constexpr std::uint8_t kTransformId = 1;
inline constexpr std::uint8_t kFlagFellBack = 0x01;
inline constexpr std::uint8_t kFlagHeadRow = 0x02;
}  // namespace container

/// An encoded record. `bytes` is the complete file.
struct CompressedFile {
  FileHeader header;
  std::vector<std::uint8_t> bytes;

  std::uint64_t size_bits() const noexcept { return std::uint64_t{bytes.size()} * 8; }
};

std::vector<std::uint8_t> write_container(const FileHeader& header, const SymbolStreams& streams);

struct ContainerContents {
  FileHeader header;
  SymbolStreams streams;
};

/// Validates magic, version, CRC and header consistency, then decodes the streams.
ContainerContents read_container(std::span<const std::uint8_t> bytes);

/// Header-level parse only (magic, version, CRC).
CompressedFile parse_compressed(std::vector<std::uint8_t> bytes);

}  // namespace ecgz
