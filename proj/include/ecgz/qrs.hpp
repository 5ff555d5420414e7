#pragma once

#include <cstddef>
#include <vector>

#include "ecgz/record.hpp"

namespace ecgz {

/// Detected R peak sample positions, strictly increasing.
struct RPeakList {
  std::vector<std::size_t> indices;

  std::size_t size() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }
  std::size_t operator[](std::size_t i) const { return indices[i]; }
  std::size_t front() const { return indices.front(); }
  friend bool operator==(const RPeakList&, const RPeakList&) = default;
};

struct QrsOptions {
  double integration_window_s = 0.150;
  double refractory_s = 0.200;
  double t_wave_window_s = 0.360;
  double refine_window_s = 0.050;
  double learning_s = 2.0;
};

/// Zero-phase 5-15 Hz band-pass: third-order Butterworth high-pass (5 Hz)
/// and low-pass (15 Hz) designed by the bilinear transform at the record's
/// rate, run forward and backward. The magnitude response is the square of
/// the single-pass response, so the -6 dB edges sit at roughly 5 and 15 Hz.
std::vector<double> bandpass_5_15(const EcgRecord& record);

/// Pan-Tompkins: band-pass, five-point derivative, squaring, 150 ms moving
/// window integration, adaptive signal/noise thresholds on both the
/// integrated and the filtered signal, search-back after long RR gaps and
/// T-wave rejection. Each detection is snapped to the largest |x - mean|
/// within +-50 ms of the filtered-signal peak.
RPeakList detect_r_peaks(const EcgRecord& record, const QrsOptions& options = {});

}  // namespace ecgz
