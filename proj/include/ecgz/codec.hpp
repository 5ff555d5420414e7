#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ecgz/beatgrid.hpp"
#include "ecgz/container.hpp"
#include "ecgz/dct.hpp"
#include "ecgz/dwt97.hpp"
#include "ecgz/qrs.hpp"
#include "ecgz/record.hpp"

namespace ecgz {

/// 6 wavelet levels in 2D mode, 4 in 1D mode.
int default_levels(Mode mode);

struct EncodeOptions {
  Mode mode = Mode::two_d;
  int levels = 0;  // 0: default_levels(mode)
  QrsOptions qrs;
};

/// A record with its delta-independent work done: peak detection,
/// segmentation and the forward transform. Encoding or reconstructing at a
/// given step only quantizes and (for reconstruction) inverts.
class PreparedRecord {
 public:
  PreparedRecord(const EcgRecord& record, const EncodeOptions& options = {});

  const EcgRecord& record() const noexcept { return record_; }
  Mode mode() const noexcept { return header_.mode; }
  bool fell_back_to_1d() const noexcept { return header_.fell_back_to_1d; }
  int levels() const noexcept { return header_.levels; }
  std::size_t rows() const noexcept { return header_.rows; }
  std::size_t cols() const noexcept { return header_.cols; }
  const std::vector<std::uint32_t>& beat_lengths() const noexcept { return beat_lengths_; }
  /// Transform coefficients, column-major.
  std::span<const double> coefficients() const noexcept { return coefficients_; }

  CompressedFile encode(double delta) const;
  /// Identical to decode_record(encode(delta)).samples, without entropy coding.
  std::vector<std::int32_t> reconstruct(double delta) const;

 private:
  EcgRecord record_;
  FileHeader header_;
  std::vector<std::uint32_t> beat_lengths_;
  std::vector<double> coefficients_;
  std::shared_ptr<const DctPlan> inverse_plan_;
};

CompressedFile encode_record(const EcgRecord& record, double delta, Mode mode, int levels = 0);
CompressedFile encode_record(const EcgRecord& record, double delta, const EncodeOptions& options);

EcgRecord decode_record(const CompressedFile& file);
EcgRecord decode_record(std::span<const std::uint8_t> bytes);

/// Samples from dequantized coefficients; shared by the decoder and rate control.
std::vector<std::int32_t> synthesize(const FileHeader& header, std::vector<double> dequantized,
                                     std::span<const std::uint32_t> beat_lengths, const DctPlan* inverse_plan);

}  // namespace ecgz
