#include "ecgz/record.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ecgz/error.hpp"

namespace ecgz {

namespace {

std::int32_t sign_extend12(std::uint32_t v) {
  return (v & 0x800u) ? static_cast<std::int32_t>(v) - 0x1000 : static_cast<std::int32_t>(v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string lower_ext(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

}  // namespace

std::uint64_t uncompressed_size_bits(const EcgRecord& record) {
  return static_cast<std::uint64_t>(record.samples.size()) * static_cast<std::uint64_t>(record.adc_bits);
}

EcgRecord read_wfdb_212(std::span<const std::uint8_t> data, std::size_t num_samples, std::size_t channel,
                        std::size_t channels_total) {
  if (channels_total == 0 || channel >= channels_total) {
    throw ArgumentError("channel " + std::to_string(channel) + " out of range for " +
                        std::to_string(channels_total) + " channel(s)");
  }
  const std::size_t total = num_samples * channels_total;
  const std::size_t needed = (total * 3 + 1) / 2;
  if (data.size() < needed) {
    throw DecodeError("format 212 data truncated at byte offset " + std::to_string(data.size()) + " (need " +
                      std::to_string(needed) + " bytes)");
  }

  EcgRecord rec;
  rec.samples.reserve(num_samples);
  for (std::size_t t = 0; t < num_samples; ++t) {
    const std::size_t k = t * channels_total + channel;
    const std::size_t base = (k / 2) * 3;
    std::uint32_t raw;
    if (k % 2 == 0) {
      raw = static_cast<std::uint32_t>(data[base]) | ((static_cast<std::uint32_t>(data[base + 1]) & 0x0Fu) << 8);
    } else {
      raw = static_cast<std::uint32_t>(data[base + 2]) | ((static_cast<std::uint32_t>(data[base + 1]) & 0xF0u) << 4);
    }
    rec.samples.push_back(sign_extend12(raw));
  }
  return rec;
}

std::vector<std::uint8_t> pack_wfdb_212(std::span<const std::int32_t> interleaved) {
  std::vector<std::uint8_t> out((interleaved.size() * 3 + 1) / 2, 0);
  for (std::size_t k = 0; k < interleaved.size(); ++k) {
    const auto v = static_cast<std::uint32_t>(interleaved[k]) & 0xFFFu;
    const std::size_t base = (k / 2) * 3;
    if (k % 2 == 0) {
      out[base] = static_cast<std::uint8_t>(v & 0xFF);
      out[base + 1] = static_cast<std::uint8_t>((out[base + 1] & 0xF0) | (v >> 8));
    } else {
      out[base + 1] = static_cast<std::uint8_t>((out[base + 1] & 0x0F) | ((v >> 4) & 0xF0));
      out[base + 2] = static_cast<std::uint8_t>(v & 0xFF);
    }
  }
  return out;
}

WfdbHeader parse_wfdb_header(std::string_view text) {
  WfdbHeader hdr;
  bool have_record_line = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_ws(line);

    if (!have_record_line) {
      if (fields.size() < 2) throw ParseError("WFDB record line needs name and signal count", line_no);
      hdr.record_name = std::string(fields[0].substr(0, fields[0].find('/')));
      if (!parse_number(fields[1], hdr.channels) || hdr.channels == 0) {
        throw ParseError("bad signal count '" + std::string(fields[1]) + "'", line_no);
      }
      if (fields.size() >= 3) {
        // "360", "360/1", "360(0)" are all legal frequency spellings.
        auto f = fields[2];
        f = f.substr(0, std::min(f.find('/'), f.find('(')));
        if (!parse_number(f, hdr.sampling_rate) || hdr.sampling_rate <= 0) {
          throw ParseError("bad sampling frequency '" + std::string(fields[2]) + "'", line_no);
        }
      }
      if (fields.size() >= 4 && !parse_number(fields[3], hdr.num_samples)) {
        throw ParseError("bad sample count '" + std::string(fields[3]) + "'", line_no);
      }
      have_record_line = true;
      continue;
    }

    // First signal line determines data file, format and resolution.
    if (hdr.data_file.empty()) {
      if (fields.size() < 2) throw ParseError("WFDB signal line needs file name and format", line_no);
      hdr.data_file = std::string(fields[0]);
      auto fmt = fields[1];
      fmt = fmt.substr(0, std::min({fmt.find('x'), fmt.find(':'), fmt.find('+')}));
      if (!parse_number(fmt, hdr.format)) throw ParseError("bad format '" + std::string(fields[1]) + "'", line_no);
      if (fields.size() >= 4) {
        int bits = 0;
        if (parse_number(fields[3], bits) && bits > 0 && bits <= 16) hdr.adc_bits = bits;
      }
    }
  }
  if (!have_record_line) throw ParseError("empty WFDB header", line_no);
  if (hdr.data_file.empty()) throw ParseError("WFDB header has no signal lines", line_no);
  return hdr;
}

EcgRecord read_wfdb(const std::filesystem::path& header_path, std::size_t channel) {
  const auto hea = read_file_bytes(header_path);
  const auto hdr = parse_wfdb_header(std::string_view(reinterpret_cast<const char*>(hea.data()), hea.size()));
  if (hdr.format != 212) {
    throw ArgumentError(header_path.string() + ": unsupported WFDB format " + std::to_string(hdr.format) +
                        " (only 212)");
  }
  const auto data = read_file_bytes(header_path.parent_path() / hdr.data_file);
  std::size_t n = hdr.num_samples;
  if (n == 0) n = (data.size() * 2 / 3) / hdr.channels;
  auto rec = read_wfdb_212(data, n, channel, hdr.channels);
  rec.sampling_rate = hdr.sampling_rate;
  rec.adc_bits = hdr.adc_bits;
  rec.record_id = hdr.record_name;
  return rec;
}

EcgRecord read_csv(std::string_view text, double sampling_rate, int adc_bits) {
  EcgRecord rec;
  rec.sampling_rate = sampling_rate;
  rec.adc_bits = adc_bits;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line.substr(0, line.find(',')));
    if (line.empty()) continue;
    std::int32_t v = 0;
    if (!parse_number(line, v)) {
      double d = 0;
      if (!parse_number(line, d) || d != static_cast<double>(static_cast<std::int32_t>(d))) {
        throw ParseError("malformed sample '" + std::string(line) + "'", line_no);
      }
      v = static_cast<std::int32_t>(d);
    }
    rec.samples.push_back(v);
  }
  if (rec.samples.empty()) throw ParseError("no samples in CSV input", line_no);
  return rec;
}

EcgRecord read_raw16(std::span<const std::uint8_t> bytes, double sampling_rate, int adc_bits) {
  if (bytes.empty()) throw DecodeError("empty raw16 input");
  if (bytes.size() % 2 != 0) {
    throw DecodeError("raw16 data truncated at byte offset " + std::to_string(bytes.size() - 1));
  }
  EcgRecord rec;
  rec.sampling_rate = sampling_rate;
  rec.adc_bits = adc_bits;
  rec.samples.reserve(bytes.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); i += 2) {
    const auto u = static_cast<std::uint16_t>(bytes[i] | (bytes[i + 1] << 8));
    rec.samples.push_back(static_cast<std::int16_t>(u));
  }
  return rec;
}

EcgRecord read_record(const std::filesystem::path& path, const PlainFormat& meta) {
  if (!std::filesystem::exists(path)) throw std::runtime_error("cannot open '" + path.string() + "': no such file");
  const auto ext = lower_ext(path);
  EcgRecord rec;
  if (ext == ".hea") {
    rec = read_wfdb(path, meta.channel);
  } else if (ext == ".csv" || ext == ".txt") {
    const auto bytes = read_file_bytes(path);
    rec = read_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), meta.sampling_rate,
                   meta.adc_bits);
  } else {
    rec = read_raw16(read_file_bytes(path), meta.sampling_rate, meta.adc_bits);
  }
  if (rec.record_id.empty()) rec.record_id = path.stem().string();
  return rec;
}

std::string to_csv(std::span<const std::int32_t> samples) {
  std::string out;
  out.reserve(samples.size() * 6);
  char buf[16];
  for (auto s : samples) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, s);
    out.append(buf, ptr);
    out.push_back('\n');
  }
  return out;
}

std::vector<std::uint8_t> to_raw16(std::span<const std::int32_t> samples) {
  std::vector<std::uint8_t> out;
  out.reserve(samples.size() * 2);
  for (auto s : samples) {
    if (s < -32768 || s > 32767) throw ArgumentError("sample " + std::to_string(s) + " does not fit in 16 bits");
    const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(s));
    out.push_back(static_cast<std::uint8_t>(u & 0xFF));
    out.push_back(static_cast<std::uint8_t>(u >> 8));
  }
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace ecgz
