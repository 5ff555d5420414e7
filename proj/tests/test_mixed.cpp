#include <doctest.h>

#include <cmath>
#include <random>

#include "ecgz/mixed.hpp"

using namespace ecgz;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> u(-300, 300);
  Matrix m(rows, cols);
  for (auto& x : m.data()) x = u(rng);
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

TEST_CASE("zero matrix maps to zero") {
  const Matrix z(9, 40);
  const auto t = mixed_forward(z, 6);
  for (double v : t.coefficients.data()) CHECK(v == 0.0);
}

TEST_CASE("exact inverse") {
  std::mt19937_64 rng(1);
  for (auto [r, c, lv] : {std::tuple{10u, 37u, 3}, std::tuple{86u, 359u, 6}, std::tuple{1u, 2u, 6},
                          std::tuple{2u, 64u, 6}, std::tuple{33u, 5u, 6}}) {
    const auto m = random_matrix(rng, r, c);
    const auto t = mixed_forward(m, lv);
    CHECK(max_abs_diff(mixed_inverse(t), m) < 1e-9);
    CHECK(max_abs_diff(mixed_inverse(t, DctPlan(r, DctDirection::inverse)), m) < 1e-9);
  }
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(2);
  const auto a = random_matrix(rng, 12, 50);
  const auto b = random_matrix(rng, 12, 50);
  Matrix s(12, 50);
  for (std::size_t i = 0; i < s.size(); ++i) s.data()[i] = 2.0 * a.data()[i] - 0.5 * b.data()[i];
  const auto ta = mixed_forward(a, 4).coefficients;
  const auto tb = mixed_forward(b, 4).coefficients;
  const auto ts = mixed_forward(s, 4).coefficients;
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(ts.data()[i] == doctest::Approx(2.0 * ta.data()[i] - 0.5 * tb.data()[i]).epsilon(1e-9));
}

TEST_CASE("axis order does not matter") {
  std::mt19937_64 rng(3);
  const std::size_t rows = 15, cols = 70;
  const auto m = random_matrix(rng, rows, cols);
  const auto plan = make_wavelet_plan(cols, 5);

  // rows first, then columns
  Matrix alt = m;
  dwt97_forward_blocks(alt.data(), rows, plan);
  DctPlan(rows, DctDirection::forward).apply_columns(alt);

  CHECK(max_abs_diff(mixed_forward(m, 5).coefficients, alt) < 1e-9);
}

TEST_CASE("row plan follows the clamp rule") {
  std::mt19937_64 rng(4);
  CHECK(mixed_forward(random_matrix(rng, 3, 359), 6).row_plan.levels == 6);
  CHECK(mixed_forward(random_matrix(rng, 3, 20), 6).row_plan.levels == 3);
  CHECK_THROWS(mixed_forward(Matrix(3, 1), 6));
}

TEST_CASE("2D wavelet diagnostic is invertible in shape") {
  std::mt19937_64 rng(5);
  const auto m = random_matrix(rng, 16, 64);
  const auto w = dwt97_2d_forward(m, 3);
  CHECK(w.rows() == 16);
  CHECK(w.cols() == 64);
}
