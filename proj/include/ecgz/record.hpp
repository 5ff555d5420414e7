#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ecgz {

/// A single-lead ECG record. Samples are raw ADC values, kept verbatim.
struct EcgRecord {
  std::vector<std::int32_t> samples;
  double sampling_rate = 360.0;
  int adc_bits = 11;
  std::string record_id;
};

/// Sample count times ADC bit depth; the reference size for compression ratios.
std::uint64_t uncompressed_size_bits(const EcgRecord& record);

/// Decodes one channel of a WFDB format-212 byte stream. Samples are 12-bit
/// two's complement, packed two per three bytes, channels interleaved frame by frame.
EcgRecord read_wfdb_212(std::span<const std::uint8_t> data, std::size_t num_samples,
                        std::size_t channel, std::size_t channels_total);

/// Packs an interleaved sample stream into format 212. Values are truncated to 12 bits.
std::vector<std::uint8_t> pack_wfdb_212(std::span<const std::int32_t> interleaved);

/// The fields of a .hea file this library uses.
struct WfdbHeader {
  std::string record_name;
  std::size_t channels = 0;
  double sampling_rate = 250.0;
  std::size_t num_samples = 0;
  std::string data_file;
  int format = 0;
  int adc_bits = 12;
};

WfdbHeader parse_wfdb_header(std::string_view text);

/// Reads `<dir>/<name>.hea` and its format-212 data file.
EcgRecord read_wfdb(const std::filesystem::path& header_path, std::size_t channel = 0);

/// One integer sample per line; only the first comma-separated field is used.
EcgRecord read_csv(std::string_view text, double sampling_rate, int adc_bits);

/// Raw signed 16-bit little-endian samples.
EcgRecord read_raw16(std::span<const std::uint8_t> bytes, double sampling_rate, int adc_bits);

struct PlainFormat {
  double sampling_rate = 360.0;
  int adc_bits = 11;
  std::size_t channel = 0;
};

/// Dispatches on extension: .hea (WFDB), .csv, anything else raw16.
EcgRecord read_record(const std::filesystem::path& path, const PlainFormat& meta = {});

std::string to_csv(std::span<const std::int32_t> samples);
std::vector<std::uint8_t> to_raw16(std::span<const std::int32_t> samples);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace ecgz
