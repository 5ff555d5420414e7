#include "ecgz/qrs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ecgz/error.hpp"

namespace ecgz {

namespace {

struct Section {
  double b0, b1, b2, a1, a2;  // a0 normalized to 1
};

// Third-order Butterworth as one first-order and one second-order section.
// Analog prototype poles: -1 and -1/2 +- j sqrt(3)/2.
std::vector<Section> butterworth3(double cutoff_hz, double fs, bool highpass) {
  const double k = 2.0 * fs;
  const double wc = k * std::tan(std::numbers::pi * cutoff_hz / fs);
  std::vector<Section> out;

  {
    const double den = k + wc;
    const double a1 = (wc - k) / den;
    if (highpass) {
      out.push_back({k / den, -k / den, 0.0, a1, 0.0});
    } else {
      out.push_back({wc / den, wc / den, 0.0, a1, 0.0});
    }
  }
  {
    const double two_sigma = 1.0;
    const double a0 = k * k + two_sigma * wc * k + wc * wc;
    const double a1 = (2.0 * wc * wc - 2.0 * k * k) / a0;
    const double a2 = (k * k - two_sigma * wc * k + wc * wc) / a0;
    if (highpass) {
      out.push_back({k * k / a0, -2.0 * k * k / a0, k * k / a0, a1, a2});
    } else {
      out.push_back({wc * wc / a0, 2.0 * wc * wc / a0, wc * wc / a0, a1, a2});
    }
  }
  return out;
}

void run_sections(const std::vector<Section>& sections, std::vector<double>& x) {
  for (const auto& s : sections) {
    double z1 = 0.0, z2 = 0.0;
    for (auto& v : x) {
      const double in = v;
      const double y = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * y + z2;
      z2 = s.b2 * in - s.a2 * y;
      v = y;
    }
  }
}

// Forward-backward filtering with odd reflection padding at both ends.
std::vector<double> filtfilt(const std::vector<Section>& sections, const std::vector<double>& x, std::size_t pad) {
  const std::size_t n = x.size();
  pad = std::min(pad, n - 1);
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  run_sections(sections, ext);
  std::reverse(ext.begin(), ext.end());
  run_sections(sections, ext);
  std::reverse(ext.begin(), ext.end());
  return {ext.begin() + static_cast<std::ptrdiff_t>(pad), ext.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

std::size_t samples_for(double seconds, double fs) {
  return static_cast<std::size_t>(std::lround(seconds * fs));
}

// Local maxima of x that are at least `distance` apart, preferring taller peaks.
std::vector<std::size_t> find_peaks(const std::vector<double>& x, std::size_t distance) {
  std::vector<std::size_t> cand;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (x[i] > 0.0 && x[i] > x[i - 1] && x[i] >= x[i + 1]) cand.push_back(i);
  }
  std::vector<std::size_t> order(cand.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[cand[a]] > x[cand[b]]; });

  std::vector<bool> removed(cand.size(), false);
  for (std::size_t oi : order) {
    if (removed[oi]) continue;
    const std::size_t p = cand[oi];
    for (std::size_t j = oi; j-- > 0 && p - cand[j] < distance;) removed[j] = true;
    for (std::size_t j = oi + 1; j < cand.size() && cand[j] - p < distance; ++j) removed[j] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (!removed[i]) out.push_back(cand[i]);
  }
  return out;
}

struct Extremum {
  double value = 0.0;
  std::size_t index = 0;
};

Extremum max_abs_in(const std::vector<double>& x, std::size_t lo, std::size_t hi) {
  Extremum e{-1.0, lo};
  hi = std::min(hi, x.size() - 1);
  for (std::size_t i = lo; i <= hi; ++i) {
    if (std::abs(x[i]) > e.value) e = {std::abs(x[i]), i};
  }
  return e;
}

// Adaptive signal/noise level pair with the classic 1/8 learning rate.
struct Levels {
  double signal = 0.0;
  double noise = 0.0;
  double threshold = 0.0;

  void seed(double peak_level, double mean_level) {
    threshold = peak_level / 3.0;
    signal = threshold;
    noise = mean_level / 2.0;
  }
  void learn_signal(double v, double rate = 0.125) { signal = rate * v + (1.0 - rate) * signal; }
  void learn_noise(double v) { noise = 0.125 * v + 0.875 * noise; }
  void refresh() { threshold = noise + 0.25 * std::abs(signal - noise); }
  double noise_threshold() const { return 0.5 * threshold; }
};

}  // namespace

std::vector<double> bandpass_5_15(const EcgRecord& record) {
  if (record.sampling_rate < 100.0) {
    throw ArgumentError("band-pass needs a sampling rate >= 100 Hz, got " + std::to_string(record.sampling_rate));
  }
  const double fs = record.sampling_rate;
  std::vector<double> x(record.samples.begin(), record.samples.end());
  if (x.size() < 2) return x;
  // Removing the mean first makes a constant record filter to exactly zero.
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (auto& v : x) v -= mean;
  auto sections = butterworth3(5.0, fs, true);
  auto lp = butterworth3(15.0, fs, false);
  sections.insert(sections.end(), lp.begin(), lp.end());
  return filtfilt(sections, x, samples_for(1.0, fs));
}

RPeakList detect_r_peaks(const EcgRecord& record, const QrsOptions& options) {
  const double fs = record.sampling_rate;
  const std::size_t n = record.samples.size();
  if (fs <= 0.0) throw ArgumentError("sampling rate must be positive");
  const std::size_t learning = samples_for(options.learning_s, fs);
  if (n < learning) {
    throw ArgumentError("QRS detection needs at least " + std::to_string(options.learning_s) + " s of signal, got " +
                        std::to_string(n) + " samples");
  }

  const auto bp = bandpass_5_15(record);

  // Five-point derivative, squared.
  std::vector<double> sq(n, 0.0);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double d = (-bp[i - 2] - 2.0 * bp[i - 1] + 2.0 * bp[i + 1] + bp[i + 2]) / 8.0;
    sq[i] = d * d;
  }

  // Centred moving-window integration.
  const std::size_t win = std::max<std::size_t>(1, samples_for(options.integration_window_s, fs));
  std::vector<double> mwi(n, 0.0);
  {
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sq[i];
    const std::size_t half = win / 2;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i >= half ? i - half : 0;
      const std::size_t hi = std::min(n, lo + win);
      mwi[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(win);
    }
  }

  const std::size_t refractory = samples_for(options.refractory_s, fs);
  const std::size_t t_wave = samples_for(options.t_wave_window_s, fs);
  const std::size_t slope_span = samples_for(0.075, fs);
  const std::size_t half_win = win / 2;

  Levels integ, filt;
  {
    const auto first = mwi.begin() + static_cast<std::ptrdiff_t>(learning);
    const double peak = *std::max_element(mwi.begin(), first);
    const double mean = std::accumulate(mwi.begin(), first, 0.0) / static_cast<double>(learning);
    integ.seed(peak, mean);
    double bp_peak = 0.0, bp_mean = 0.0;
    for (std::size_t i = 0; i < learning; ++i) {
      bp_peak = std::max(bp_peak, std::abs(bp[i]));
      bp_mean += std::abs(bp[i]);
    }
    filt.seed(bp_peak, bp_mean / static_cast<double>(learning));
  }

  auto max_slope = [&](std::size_t at) {
    const std::size_t lo = at > slope_span ? at - slope_span : 1;
    double s = 0.0;
    for (std::size_t i = std::max<std::size_t>(lo, 1); i <= at; ++i) s = std::max(s, std::abs(mwi[i] - mwi[i - 1]));
    return s;
  };

  std::vector<std::size_t> beats;    // accepted positions on the filtered signal
  std::vector<std::size_t> beat_at;  // matching positions on the integrated signal
  double last_slope = 0.0;

  auto accept = [&](std::size_t integ_loc, std::size_t filt_loc) {
    beats.push_back(filt_loc);
    beat_at.push_back(integ_loc);
    last_slope = max_slope(integ_loc);
  };

  for (std::size_t loc : find_peaks(mwi, refractory)) {
    const double pk = mwi[loc];
    const auto y = max_abs_in(bp, loc > half_win ? loc - half_win : 0, loc + half_win);

    // Search back for a missed beat after an unusually long RR gap.
    if (beat_at.size() >= 9) {
      double rr = 0.0;
      for (std::size_t i = beat_at.size() - 8; i < beat_at.size(); ++i) rr += double(beat_at[i] - beat_at[i - 1]);
      rr /= 8.0;
      const std::size_t last = beat_at.back();
      if (double(loc - last) >= 1.66 * rr && loc > last + 2 * refractory) {
        std::size_t best = 0;
        double best_v = -1.0;
        for (std::size_t i = last + refractory; i <= loc - refractory; ++i) {
          if (mwi[i] > best_v) best_v = mwi[i], best = i;
        }
        if (best_v > integ.noise_threshold()) {
          const auto yb = max_abs_in(bp, best > half_win ? best - half_win : 0, best + half_win);
          if (yb.value > filt.noise_threshold()) {
            accept(best, yb.index);
            filt.learn_signal(yb.value, 0.25);
            integ.learn_signal(best_v, 0.25);
          }
        }
      }
    }

    if (pk >= integ.threshold && pk > 0.0) {
      bool t_wave_like = false;
      if (beat_at.size() >= 3 && loc - beat_at.back() <= t_wave) {
        t_wave_like = max_slope(loc) <= 0.5 * last_slope;
      }
      if (t_wave_like) {
        filt.learn_noise(y.value);
        integ.learn_noise(pk);
      } else if (y.value >= filt.threshold) {
        accept(loc, y.index);
        filt.learn_signal(y.value);
        integ.learn_signal(pk);
      } else {
        filt.learn_noise(y.value);
        integ.learn_noise(pk);
      }
    } else {
      filt.learn_noise(y.value);
      integ.learn_noise(pk);
    }
    integ.refresh();
    filt.refresh();
  }

  // Snap to the raw apex and restore ordering/refractory spacing.
  double mean = 0.0;
  for (auto v : record.samples) mean += v;
  mean /= static_cast<double>(n);
  const std::size_t reach = samples_for(options.refine_window_s, fs);
  auto apex_height = [&](std::size_t i) { return std::abs(record.samples[i] - mean); };

  std::vector<std::size_t> snapped;
  for (std::size_t b : beats) {
    const std::size_t lo = b > reach ? b - reach : 0;
    const std::size_t hi = std::min(n - 1, b + reach);
    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i) {
      if (apex_height(i) > apex_height(best)) best = i;
    }
    snapped.push_back(best);
  }
  std::sort(snapped.begin(), snapped.end());

  RPeakList out;
  for (std::size_t p : snapped) {
    if (!out.indices.empty() && p - out.indices.back() < refractory) {
      if (apex_height(p) > apex_height(out.indices.back())) out.indices.back() = p;
      continue;
    }
    out.indices.push_back(p);
  }
  return out;
}

}  // namespace ecgz
