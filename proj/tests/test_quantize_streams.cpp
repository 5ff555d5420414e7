#include <doctest.h>

#include <cmath>
#include <random>

#include "ecgz/error.hpp"
#include "ecgz/quantize.hpp"
#include "ecgz/streams.hpp"

using namespace ecgz;

namespace {

std::int64_t q1(double b, double delta) { return quantize(std::vector<double>{b}, delta)[0]; }

}  // namespace

TEST_CASE("mid-tread quantizer") {
  CHECK(q1(0.49, 1) == 0);
  CHECK(q1(0.5, 1) == 1);
  CHECK(q1(-0.6, 1) == -1);
  CHECK(q1(-0.5, 1) == 0);
  CHECK(q1(2.5, 0.5) == 5);
  CHECK(q1(0.0, 3) == 0);
  CHECK_THROWS_AS(q1(1, 0), ArgumentError);
  CHECK_THROWS_AS(q1(1, -1), ArgumentError);
  CHECK_THROWS_AS(q1(1, std::nan("")), ArgumentError);
}

TEST_CASE("quantization error is at most half a step") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  std::vector<double> b(5000);
  for (auto& v : b) v = u(rng);
  for (double delta : {0.01, 0.5, 1.0, 7.3, 250.0}) {
    const auto q = quantize(b, delta);
    std::vector<double> r(b.size());
    quantize_reconstruct(b, delta, r);
    for (std::size_t i = 0; i < b.size(); ++i) {
      CHECK(r[i] == static_cast<double>(q[i]) * delta);
      CHECK(std::abs(r[i] - b[i]) <= delta / 2 * (1 + 1e-12));
    }
  }
}

TEST_CASE("stream construction") {
  const std::vector<std::int64_t> q{0, 3, 0, -2, 1};
  const auto s = build_streams(q, {});
  CHECK(s.nonzero_count() == 3);
  CHECK(s.magnitudes == std::vector<std::uint32_t>{3, 2, 1});
  CHECK(s.signs == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(s.gaps == std::vector<std::uint32_t>{2, 2, 1});
  CHECK(s.total_length == 5);
  CHECK(positions(s) == std::vector<std::uint64_t>{2, 4, 5});

  const auto z = build_streams(std::vector<std::int64_t>(6, 0), {});
  CHECK(z.nonzero_count() == 0);
  CHECK(z.gaps.empty());
  CHECK(z.signs.empty());

  const auto seven = build_streams(std::vector<std::int64_t>{7}, {});
  CHECK(seven.magnitudes == std::vector<std::uint32_t>{7});
  CHECK(seven.signs == std::vector<std::uint32_t>{1});
  CHECK(seven.gaps == std::vector<std::uint32_t>{1});
}

TEST_CASE("scatter inverts stream construction") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> q(1 + rng() % 300);
    for (auto& v : q) v = rng() % 4 == 0 ? static_cast<std::int64_t>(rng() % 2001) - 1000 : 0;
    const std::vector<std::uint32_t> h{3, 4};
    const auto s = build_streams(q, h);
    CHECK(s.beat_lengths == h);
    const auto pos = positions(s);
    for (std::size_t i = 1; i < pos.size(); ++i) CHECK(pos[i] > pos[i - 1]);
    const double delta = 0.75;
    const auto dense = scatter(s, delta);
    REQUIRE(dense.size() == q.size());
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(dense[i] == static_cast<double>(q[i]) * delta);
  }
}

TEST_CASE("malformed streams are rejected") {
  auto s = build_streams(std::vector<std::int64_t>{0, 3, 0, -2, 1}, {});
  auto bad = s;
  bad.gaps[1] = 0;
  CHECK_THROWS_AS(positions(bad), CorruptStream);
  bad = s;
  bad.gaps[2] = 5;
  CHECK_THROWS_AS(positions(bad), CorruptStream);
  bad = s;
  bad.signs.pop_back();
  CHECK_THROWS_AS(positions(bad), CorruptStream);
  bad = s;
  bad.magnitudes[0] = 0;
  CHECK_THROWS_AS(positions(bad), CorruptStream);
  bad = s;
  bad.signs[0] = 2;
  CHECK_THROWS_AS(positions(bad), CorruptStream);
}
