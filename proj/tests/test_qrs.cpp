#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ecgz/error.hpp"
#include "ecgz/qrs.hpp"
#include "support/synth.hpp"

using namespace ecgz;

namespace {

EcgRecord sinusoid(double freq, double amplitude, double fs = 360.0, double seconds = 10.0) {
  EcgRecord r;
  r.sampling_rate = fs;
  r.samples.resize(static_cast<std::size_t>(fs * seconds));
  for (std::size_t i = 0; i < r.samples.size(); ++i)
    r.samples[i] = static_cast<std::int32_t>(std::lround(amplitude * std::sin(2 * std::numbers::pi * freq * i / fs)));
  return r;
}

// Peak |output| over the middle of the record, away from the edge transients.
double steady_amplitude(const std::vector<double>& y) {
  double m = 0;
  for (std::size_t i = y.size() / 4; i < 3 * y.size() / 4; ++i) m = std::max(m, std::abs(y[i]));
  return m;
}

std::vector<std::size_t> regular_apexes(std::size_t length, std::size_t period, std::size_t first) {
  std::vector<std::size_t> a;
  for (std::size_t p = first; p + 30 < length; p += period) a.push_back(p);
  return a;
}

void check_matches(const RPeakList& got, const std::vector<std::size_t>& apexes, long tolerance) {
  REQUIRE(got.size() == apexes.size());
  for (std::size_t i = 0; i < apexes.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(static_cast<long>(got[i]) - static_cast<long>(apexes[i])) <= tolerance);
  }
}

}  // namespace

TEST_CASE("band-pass gain") {
  EcgRecord dc;
  dc.samples.assign(3600, 1000);
  const auto y = bandpass_5_15(dc);
  REQUIRE(y.size() == dc.samples.size());
  double mean_abs = 0;
  for (std::size_t i = 900; i < 2700; ++i) mean_abs += std::abs(y[i]);
  CHECK(mean_abs / 1800 < 1e-6 * 1000);

  CHECK(steady_amplitude(bandpass_5_15(sinusoid(10, 1000))) >= 0.5 * 1000);
  CHECK(steady_amplitude(bandpass_5_15(sinusoid(60, 1000))) <= 0.2 * 1000);
  CHECK(steady_amplitude(bandpass_5_15(sinusoid(0.5, 1000))) <= 0.1 * 1000);

  EcgRecord slow = dc;
  slow.sampling_rate = 50;
  CHECK_THROWS_AS(bandpass_5_15(slow), ArgumentError);
}

TEST_CASE("flat signal has no peaks") {
  EcgRecord flat;
  flat.samples.assign(3600, 0);
  CHECK(detect_r_peaks(flat).empty());
  flat.samples.assign(3600, 512);
  CHECK(detect_r_peaks(flat).empty());
}

TEST_CASE("too short a record is rejected") {
  EcgRecord r;
  r.samples.assign(719, 0);
  CHECK_THROWS_AS(detect_r_peaks(r), ArgumentError);
  r.samples.assign(720, 0);
  CHECK_NOTHROW(detect_r_peaks(r));
}

TEST_CASE("regular pulse train") {
  const std::size_t n = 360 * 30;
  const auto apexes = regular_apexes(n, 300, 150);
  const auto rec = testing::pulse_train(n, apexes, std::vector<double>(apexes.size(), 1.0));
  check_matches(detect_r_peaks(rec), apexes, 18);
}

TEST_CASE("alternating amplitudes are all detected") {
  const std::size_t n = 360 * 30;
  const auto apexes = regular_apexes(n, 300, 150);
  std::vector<double> scales;
  for (std::size_t i = 0; i < apexes.size(); ++i) scales.push_back(i % 2 ? 0.6 : 1.0);
  check_matches(detect_r_peaks(testing::pulse_train(n, apexes, scales)), apexes, 18);
}

TEST_CASE("synthetic ECG beats are found at the R waves") {
  testing::SynthOptions so;
  so.rr_jitter = 0.0;
  so.mean_rr_s = 0.8;
  const auto rec = testing::synth_ecg(so);
  const auto peaks = detect_r_peaks(rec);
  std::vector<std::size_t> apexes;
  for (std::size_t p = 126; p < rec.samples.size(); p += 288) apexes.push_back(p);
  check_matches(peaks, apexes, 18);
}

TEST_CASE("properties") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    testing::SynthOptions so;
    so.seed = seed;
    so.mean_rr_s = 0.5 + 0.1 * seed;
    so.rr_jitter = 0.15;
    auto rec = testing::synth_ecg(so);
    const auto peaks = detect_r_peaks(rec);
    REQUIRE(!peaks.empty());

    const auto refractory = static_cast<std::size_t>(std::lround(0.2 * rec.sampling_rate));
    for (std::size_t i = 1; i < peaks.size(); ++i) CHECK(peaks[i] - peaks[i - 1] >= refractory);
    CHECK(peaks.indices.back() < rec.samples.size());

    CHECK(detect_r_peaks(rec) == peaks);

    auto doubled = rec;
    for (auto& s : doubled.samples) s *= 2;
    CHECK(detect_r_peaks(doubled) == peaks);
  }
}
