#pragma once

// Deterministic synthetic ECG-like records for tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ecgz/record.hpp"

namespace ecgz::testing {

struct SynthOptions {
  double fs = 360.0;
  double seconds = 30.0;
  double mean_rr_s = 0.8;
  double rr_jitter = 0.05;     // relative
  double amplitude = 200.0;    // ADC units of the R wave
  double baseline = 1024.0;
  double wander = 10.0;        // 0.3 Hz baseline wander amplitude
  double noise_sigma = 2.0;
  std::uint64_t seed = 1;
};

/// P-QRS-T complexes built from Gaussian bumps, plus wander and white noise.
inline EcgRecord synth_ecg(const SynthOptions& o = {}) {
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> noise(0.0, o.noise_sigma);
  std::uniform_real_distribution<double> jitter(-o.rr_jitter, o.rr_jitter);
  const auto n = static_cast<std::size_t>(o.seconds * o.fs);

  std::vector<double> beats;
  for (double t = 0.35; t < o.seconds; t += o.mean_rr_s * (1.0 + jitter(rng))) beats.push_back(t);

  struct Wave {
    double amp, centre, width;
  };
  const Wave waves[] = {{0.15, -0.20, 0.025}, {-0.10, -0.03, 0.010}, {1.00, 0.0, 0.012},
                        {-0.25, 0.03, 0.012}, {0.30, 0.25, 0.060}};

  std::vector<double> x(n, 0.0);
  for (double bt : beats) {
    for (const auto& w : waves) {
      const double c = bt + w.centre;
      const auto lo = static_cast<long>((c - 5 * w.width) * o.fs);
      const auto hi = static_cast<long>((c + 5 * w.width) * o.fs);
      for (long i = std::max(0L, lo); i <= hi && i < static_cast<long>(n); ++i) {
        const double dt = i / o.fs - c;
        x[i] += o.amplitude * w.amp * std::exp(-0.5 * dt * dt / (w.width * w.width));
      }
    }
  }
  EcgRecord rec;
  rec.sampling_rate = o.fs;
  rec.adc_bits = 11;
  rec.record_id = "synth" + std::to_string(o.seed);
  rec.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = o.baseline + x[i] + o.wander * std::sin(2 * M_PI * 0.3 * i / o.fs) + noise(rng);
    rec.samples[i] = static_cast<std::int32_t>(std::lround(v));
  }
  return rec;
}

/// Ricker (negated second derivative of a Gaussian) pulses with apexes at
/// `apexes`; amplitude per pulse from `scales`.
inline EcgRecord pulse_train(std::size_t length, const std::vector<std::size_t>& apexes,
                             const std::vector<double>& scales, double fs = 360.0, double sigma_s = 0.010) {
  std::vector<double> x(length, 0.0);
  const double sigma = sigma_s * fs;
  for (std::size_t k = 0; k < apexes.size(); ++k) {
    for (long d = -static_cast<long>(6 * sigma); d <= static_cast<long>(6 * sigma); ++d) {
      const long i = static_cast<long>(apexes[k]) + d;
      if (i < 0 || i >= static_cast<long>(length)) continue;
      const double u = d / sigma;
      x[i] += scales[k] * 500.0 * (1.0 - u * u) * std::exp(-0.5 * u * u);
    }
  }
  EcgRecord rec;
  rec.sampling_rate = fs;
  rec.samples.resize(length);
  for (std::size_t i = 0; i < length; ++i) rec.samples[i] = static_cast<std::int32_t>(std::lround(x[i]));
  return rec;
}

}  // namespace ecgz::testing
