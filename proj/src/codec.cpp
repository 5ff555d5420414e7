#include "ecgz/codec.hpp"

#include <algorithm>
#include <string>

#include "ecgz/error.hpp"
#include "ecgz/mixed.hpp"
#include "ecgz/quantize.hpp"
#include "ecgz/streams.hpp"

namespace ecgz {

int default_levels(Mode mode) { return mode == Mode::two_d ? 6 : 4; }

PreparedRecord::PreparedRecord(const EcgRecord& record, const EncodeOptions& options) : record_(record) {
  if (record.samples.empty()) throw ArgumentError("cannot encode an empty record");
  if (record.samples.size() > 0xFFFFFFFFull) throw ArgumentError("record too long for 32-bit dimensions");
  const int requested = options.levels > 0 ? options.levels : default_levels(options.mode);

  header_.sampling_rate = record.sampling_rate;
  header_.adc_bits = record.adc_bits;

  if (options.mode == Mode::two_d) {
    RPeakList peaks;
    if (record.samples.size() >= static_cast<std::size_t>(options.qrs.learning_s * record.sampling_rate)) {
      peaks = detect_r_peaks(record, options.qrs);
    }
    if (peaks.size() >= 2) {
      auto grid = segment(record, peaks);
      if (grid.cols() >= 2) {
        auto tm = mixed_forward(grid, requested);
        header_.mode = Mode::two_d;
        header_.levels = tm.row_plan.levels;
        header_.mean = grid.mean;
        header_.rows = static_cast<std::uint32_t>(grid.rows());
        header_.cols = static_cast<std::uint32_t>(grid.cols());
        beat_lengths_ = std::move(grid.beat_lengths);
        coefficients_ = std::move(tm.coefficients).release();
        inverse_plan_ = std::make_shared<const DctPlan>(header_.rows, DctDirection::inverse);
        return;
      }
    }
    header_.fell_back_to_1d = true;
  }

  // 1D: mean-removed signal, wavelet only.
  double sum = 0.0;
  for (auto v : record.samples) sum += v;
  header_.mode = Mode::one_d;
  header_.mean = sum / static_cast<double>(record.samples.size());
  header_.rows = 1;
  header_.cols = static_cast<std::uint32_t>(record.samples.size());
  const int levels_1d = options.mode == Mode::one_d ? requested : default_levels(Mode::one_d);
  std::vector<double> centred(record.samples.size());
  for (std::size_t i = 0; i < centred.size(); ++i) centred[i] = record.samples[i] - header_.mean;
  auto wc = dwt97_forward(centred, levels_1d);
  header_.levels = wc.plan.levels;
  coefficients_ = std::move(wc.coefficients);
}

CompressedFile PreparedRecord::encode(double delta) const {
  CompressedFile f;
  f.header = header_;
  f.header.delta = delta;
  const auto q = quantize(coefficients_, delta);
  const auto streams = build_streams(q, beat_lengths_);
  f.bytes = write_container(f.header, streams);
  return f;
}

std::vector<std::int32_t> PreparedRecord::reconstruct(double delta) const {
  std::vector<double> levels(coefficients_.size());
  quantize_reconstruct(coefficients_, delta, levels);
  FileHeader h = header_;
  h.delta = delta;
  return synthesize(h, std::move(levels), beat_lengths_, inverse_plan_.get());
}

std::vector<std::int32_t> synthesize(const FileHeader& header, std::vector<double> dequantized,
                                     std::span<const std::uint32_t> beat_lengths, const DctPlan* inverse_plan) {
  const std::size_t rows = header.rows;
  const std::size_t cols = header.cols;
  if (dequantized.size() != rows * cols) throw ArgumentError("coefficient count does not match header dimensions");
  const int requested = std::max(header.levels, 1);
  const auto plan = make_wavelet_plan(cols, requested);
  if (plan.levels != header.levels) {
    throw CorruptStream("wavelet level count " + std::to_string(header.levels) + " invalid for length " +
                        std::to_string(cols));
  }

  if (header.mode == Mode::one_d) {
    dwt97_inverse_blocks(dequantized, 1, plan);
    for (auto& v : dequantized) v += header.mean;
    return round_samples(dequantized);
  }

  std::uint32_t widest = 0;
  for (auto h : beat_lengths) {
    if (h == 0 || h > cols) throw CorruptStream("beat length out of range");
    widest = std::max(widest, h);
  }
  if (beat_lengths.size() != rows || widest != cols) throw CorruptStream("beat lengths inconsistent with dimensions");

  std::unique_ptr<DctPlan> local;
  if (inverse_plan == nullptr) {
    local = std::make_unique<DctPlan>(rows, DctDirection::inverse);
    inverse_plan = local.get();
  }
  const Matrix a = mixed_inverse(Matrix(rows, cols, std::move(dequantized)), plan, *inverse_plan);
  return round_samples(reassemble(beat_lengths, header.mean, a));
}

CompressedFile encode_record(const EcgRecord& record, double delta, const EncodeOptions& options) {
  return PreparedRecord(record, options).encode(delta);
}

CompressedFile encode_record(const EcgRecord& record, double delta, Mode mode, int levels) {
  EncodeOptions opt;
  opt.mode = mode;
  opt.levels = levels;
  return encode_record(record, delta, opt);
}

EcgRecord decode_record(std::span<const std::uint8_t> bytes) {
  auto contents = read_container(bytes);
  const auto& h = contents.header;
  auto dense = scatter(contents.streams, h.delta);
  EcgRecord out;
  out.samples = synthesize(h, std::move(dense), contents.streams.beat_lengths, nullptr);
  out.sampling_rate = h.sampling_rate;
  out.adc_bits = h.adc_bits;
  return out;
}

EcgRecord decode_record(const CompressedFile& file) { return decode_record(file.bytes); }

}  // namespace ecgz
