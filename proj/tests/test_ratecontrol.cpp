#include <doctest.h>

#include <cmath>

#include "ecgz/codec.hpp"
#include "ecgz/ratecontrol.hpp"
#include "support/synth.hpp"

using namespace ecgz;

namespace {

EcgRecord noisy_record(std::uint64_t seed) {
  testing::SynthOptions so;
  so.seconds = 30;
  so.noise_sigma = 4.0;
  so.seed = seed;
  return testing::synth_ecg(so);
}

}  // namespace

TEST_CASE("hits a PRD target within tolerance") {
  for (Mode mode : {Mode::one_d, Mode::two_d}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto rec = noisy_record(seed);
      const auto r = find_delta(rec, 1.0, mode);
      CAPTURE(seed);
      CHECK(r.target_met);
      CHECK(r.report.prd >= 0.99);
      CHECK(r.report.prd <= 1.01);
    }
  }
}

TEST_CASE("hits a PRD_B target") {
  const auto rec = noisy_record(4);
  RateControlOptions o;
  o.metric = Metric::prd_b;
  const auto r = find_delta(rec, 6.82, Mode::two_d, o);
  CHECK(r.target_met);
  CHECK(std::abs(r.report.prd_b - 6.82) <= 0.01);
}

TEST_CASE("target zero is reported as not met") {
  const auto r = find_delta(noisy_record(1), 0.0, Mode::two_d);
  CHECK(!r.target_met);
  const auto neg = find_delta(noisy_record(1), -1.0, Mode::one_d);
  CHECK(!neg.target_met);
}

TEST_CASE("unreachable target") {
  const auto r = find_delta(noisy_record(1), 1e6, Mode::one_d);
  CHECK(!r.target_met);
  CHECK(r.delta > 0);
}

TEST_CASE("returned step reproduces its report") {
  const auto rec = noisy_record(5);
  const PreparedRecord p(rec, {Mode::two_d, 0, {}});
  const auto a = find_delta(p, 0.7);
  const auto b = find_delta(p, 0.7);
  CHECK(a.delta == b.delta);
  const auto again = evaluate(p, a.delta);
  CHECK(again.prd == a.report.prd);
  CHECK(again.compressed_bits == a.report.compressed_bits);
  CHECK(again.compressed_bits == p.encode(a.delta).size_bits());
}

TEST_CASE("metric names") {
  CHECK(metric_name(Metric::prd) == "prd");
  CHECK(metric_name(Metric::prd_b) == "prdb");
  CHECK(parse_metric("prdb") == Metric::prd_b);
  CHECK_THROWS(parse_metric("snr"));
}
