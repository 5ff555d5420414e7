#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "ecgz/bitio.hpp"
#include "ecgz/error.hpp"
#include "ecgz/huffman.hpp"
#include "support/oracles.hpp"

using namespace ecgz;

namespace {

double kraft_sum(const Codebook& cb) {
  double s = 0;
  for (auto l : cb.lengths())
    if (l) s += std::ldexp(1.0, -l);
  return s;
}

std::vector<std::uint32_t> geometric(std::mt19937_64& rng, std::size_t n, double p) {
  std::geometric_distribution<std::uint32_t> g(p);
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = g(rng) + 1;
  return v;
}

}  // namespace

TEST_CASE("bit io") {
  BitWriter w;
  w.put(0b101, 3);
  w.put_gamma(1);
  w.put_gamma(5);
  w.put(0xDEADBEEFCAFEull, 48);
  w.put_bit(true);
  const auto bits = w.bit_count();
  w.align();
  CHECK(w.bit_count() % 8 == 0);
  BitReader r(w.bytes(), bits);
  CHECK(r.get(3) == 0b101);
  CHECK(r.get_gamma() == 1);
  CHECK(r.get_gamma() == 5);
  CHECK(r.get(48) == 0xDEADBEEFCAFEull);
  CHECK(r.get_bit());
  CHECK(r.remaining() == 0);
  CHECK_THROWS_AS(r.get_bit(), CorruptStream);
  CHECK((w.bytes()[0] >> 5) == 0b101);
}

TEST_CASE("single-symbol alphabet uses one bit per symbol") {
  const std::vector<std::uint32_t> v{5, 5, 5, 5};
  const auto p = huffman_encode(v);
  CHECK(p.bit_count == 4);
  CHECK(p.codebook.lengths()[5] == 1);
  CHECK(huffman_decode(p.bits, p.bit_count, p.codebook, 4) == v);
}

TEST_CASE("empty input") {
  const auto p = huffman_encode({});
  CHECK(p.codebook.empty());
  CHECK(p.bit_count == 0);
  CHECK(huffman_decode(p.bits, 0, p.codebook, 0).empty());
}

TEST_CASE("round trip, Kraft and entropy bound") {
  std::mt19937_64 rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    std::vector<std::uint32_t> v;
    switch (trial % 4) {
      case 0: v = geometric(rng, n, 0.3); break;
      case 1: v = geometric(rng, n, 0.02); break;
      case 2:
        v.resize(n);
        for (auto& x : v) x = static_cast<std::uint32_t>(rng() % 3);
        break;
      default:
        v.resize(n);
        for (auto& x : v) x = rng() % 10 == 0 ? static_cast<std::uint32_t>(rng()) : static_cast<std::uint32_t>(rng() % 40000);
    }
    const auto p = huffman_encode(v);
    REQUIRE(huffman_decode(p.bits, p.bit_count, p.codebook, v.size()) == v);
    CHECK(kraft_sum(p.codebook) <= 1.0);

    if (trial % 4 < 3) {  // no escapes: payload is pure code bits
      const double avg = double(p.bit_count) / double(v.size());
      CHECK(avg <= testing::entropy_bits(v) + 1.0 + 1e-12);
    }
  }
}

TEST_CASE("escaped values") {
  const std::vector<std::uint32_t> v{1, 32768, 32769, 32770, 0xFFFFFFFFu, 1, 1};
  const auto p = huffman_encode(v);
  CHECK(huffman_decode(p.bits, p.bit_count, p.codebook, v.size()) == v);
  CHECK(p.codebook.max_symbol() == huffman::kEscape);
}

TEST_CASE("codebook serialization") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = geometric(rng, 200, 0.1);
    const auto cb = Codebook::build(v);
    BitWriter w;
    cb.write(w);
    const auto bits = w.bit_count();
    BitReader r(w.bytes(), bits);
    CHECK(Codebook::read(r) == cb);
    CHECK(r.remaining() == 0);
  }
  CHECK_THROWS_AS(Codebook(std::vector<std::uint8_t>{1, 1, 1}), CorruptStream);
}

TEST_CASE("truncated payload") {
  std::mt19937_64 rng(3);
  const auto v = geometric(rng, 300, 0.2);
  const auto p = huffman_encode(v);
  CHECK_THROWS_AS(huffman_decode(p.bits, p.bit_count - 1, p.codebook, v.size()), CorruptStream);
  CHECK_THROWS_AS(huffman_decode(p.bits, p.bit_count, p.codebook, v.size() + 1), CorruptStream);
}

TEST_CASE("fuzz: random codebooks and bits never crash") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::uint8_t> lengths(1 + rng() % 40);
    for (auto& l : lengths) l = static_cast<std::uint8_t>(rng() % 9);
    std::optional<Codebook> cb;
    try {
      cb.emplace(lengths);
    } catch (const CorruptStream&) {
      continue;
    }
    std::vector<std::uint8_t> bits(rng() % 64);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng());
    const std::size_t count = rng() % 100;
    std::size_t decoded = count;
    try {
      decoded = huffman_decode(bits, bits.size() * 8, *cb, count).size();
    } catch (const CorruptStream&) {
    }
    CHECK(decoded == count);
  }
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::uint8_t> bytes(rng() % 64);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    try {
      BitReader r(bytes);
      const auto cb = Codebook::read(r);
      cb.decode(r, rng() % 50);
    } catch (const CorruptStream&) {
    }
  }
}
