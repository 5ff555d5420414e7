#include "ecgz/container.hpp"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "ecgz/bitio.hpp"
#include "ecgz/error.hpp"
#include "ecgz/huffman.hpp"

namespace ecgz {

namespace {

constexpr char kMagic[4] = {'E', 'C', 'G', 'Z'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}

double get_f64(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[at + i]) << (8 * i);
  return std::bit_cast<double>(v);
}

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  return static_cast<std::uint32_t>(crc32(crc, bytes.data(), static_cast<uInt>(bytes.size())));
}

void write_stream(BitWriter& w, std::span<const std::uint32_t> values) {
  w.put(values.size(), 32);
  if (values.empty()) return;
  const auto book = Codebook::build(values);
  book.write(w);
  book.encode(w, values);
}

std::vector<std::uint32_t> read_stream(BitReader& r) {
  const auto count = static_cast<std::size_t>(r.get(32));
  if (count == 0) return {};
  const auto book = Codebook::read(r);
  return book.decode(r, count);
}

FileHeader parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < container::kHeaderBytes + 4) throw DecodeError("file too short for an ECGZ header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw DecodeError("not an ECGZ file (bad magic)");
  if (bytes[4] != container::kVersion) throw DecodeError("unsupported ECGZ version " + std::to_string(bytes[4]));

  const auto body = bytes.first(bytes.size() - 4);
  if (crc_of(body) != get_u32(bytes, bytes.size() - 4)) throw CorruptStream("checksum mismatch");

  FileHeader h;
  if (bytes[5] != 1 && bytes[5] != 2) throw DecodeError("unknown mode " + std::to_string(bytes[5]));
  h.mode = static_cast<Mode>(bytes[5]);
  h.fell_back_to_1d = bytes[6] & container::kFlagFellBack;
  h.levels = bytes[7];
  if (bytes[8] != container::kTransformId) throw DecodeError("unknown transform id " + std::to_string(bytes[8]));
  h.adc_bits = bytes[9];
  h.sampling_rate = get_f64(bytes, 12);
  h.delta = get_f64(bytes, 20);
  h.mean = get_f64(bytes, 28);
  h.rows = get_u32(bytes, 36);
  h.cols = get_u32(bytes, 40);
  if (!(h.delta > 0.0) || !std::isfinite(h.delta) || !std::isfinite(h.mean)) {
    throw DecodeError("invalid quantization step or mean in header");
  }
  if (h.rows == 0 || h.cols == 0 || (h.mode == Mode::one_d && h.rows != 1)) {
    throw DecodeError("invalid dimensions in header");
  }
  return h;
}

}  // namespace

std::vector<std::uint8_t> write_container(const FileHeader& header, const SymbolStreams& streams) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(container::kVersion);
  out.push_back(static_cast<std::uint8_t>(header.mode));
  std::uint8_t flags = 0;
  if (header.fell_back_to_1d) flags |= container::kFlagFellBack;
  if (header.mode == Mode::two_d) flags |= container::kFlagHeadRow;
  out.push_back(flags);
  out.push_back(static_cast<std::uint8_t>(header.levels));
  out.push_back(container::kTransformId);
  out.push_back(static_cast<std::uint8_t>(header.adc_bits));
  out.push_back(0);
  out.push_back(0);
  put_f64(out, header.sampling_rate);
  put_f64(out, header.delta);
  put_f64(out, header.mean);
  put_u32(out, header.rows);
  put_u32(out, header.cols);

  BitWriter w;
  write_stream(w, streams.magnitudes);
  write_stream(w, streams.signs);
  write_stream(w, streams.gaps);
  write_stream(w, streams.beat_lengths);
  const auto& payload = w.bytes();
  out.insert(out.end(), payload.begin(), payload.end());
  put_u32(out, crc_of(out));
  return out;
}

ContainerContents read_container(std::span<const std::uint8_t> bytes) {
  ContainerContents c;
  c.header = parse_header(bytes);
  const auto payload = bytes.subspan(container::kHeaderBytes, bytes.size() - container::kHeaderBytes - 4);
  BitReader r(payload);
  c.streams.magnitudes = read_stream(r);
  c.streams.signs = read_stream(r);
  c.streams.gaps = read_stream(r);
  c.streams.beat_lengths = read_stream(r);
  c.streams.total_length = std::uint64_t{c.header.rows} * c.header.cols;
  if (c.header.mode == Mode::two_d && c.streams.beat_lengths.size() != c.header.rows) {
    throw CorruptStream("beat length count does not match row count");
  }
  if (c.header.mode == Mode::one_d && !c.streams.beat_lengths.empty()) {
    throw CorruptStream("1D file carries beat lengths");
  }
  return c;
}

CompressedFile parse_compressed(std::vector<std::uint8_t> bytes) {
  CompressedFile f;
  f.header = parse_header(bytes);
  f.bytes = std::move(bytes);
  return f;
}

}  // namespace ecgz
