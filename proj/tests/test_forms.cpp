#include "doctest.h"

#include "canon/congruence.hpp"
#include "canon/forms.hpp"
#include "test_support.hpp"

using namespace canon;

TEST_CASE("forms: construction and matrices") {
  const MetricG g(2, 1);
  CHECK(g.dim() == 3);
  CHECK(g.matrix() == canon::testing::g_matrix(2, 1));
  const SymplecticBeta b(2);
  CHECK(b.dim() == 4);
  CHECK(b.matrix() == canon::testing::beta_matrix(2));
  CHECK(describe(QuadraticForm{g}) == "metric(2,1)");
  CHECK(describe(QuadraticForm{b}) == "symplectic(2)");
  CHECK(form_dim(QuadraticForm{b}) == 4);

  const auto code_of = [](auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NumericalBreakdown;
  };
  CHECK(code_of([] { MetricG(0, 0); }) == ErrorCode::ZeroDimension);
  CHECK(code_of([] { SymplecticBeta(0); }) == ErrorCode::ZeroDimension);
  CHECK(code_of([] { MetricG(-1, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("even_odd_split: metric blocks") {
  Rng rng(3);
  const RealMatrix m = random_hermitian<double>(5, rng);
  const auto s = even_odd_split<double>(m, metric(2, 3));
  // Even part keeps the diagonal blocks, odd part the off-diagonal ones.
  CHECK(max_abs(s.even.topRightCorner(2, 3)) == 0.0);
  CHECK(max_abs(s.even.bottomLeftCorner(3, 2)) == 0.0);
  CHECK(max_abs(s.even.topLeftCorner(2, 2) - m.topLeftCorner(2, 2)) < 1e-15);
  CHECK(max_abs(s.even.bottomRightCorner(3, 3) - m.bottomRightCorner(3, 3)) < 1e-15);
  CHECK(max_abs(s.odd.topLeftCorner(2, 2)) == 0.0);
  CHECK(max_abs(s.odd.topRightCorner(2, 3) - m.topRightCorner(2, 3)) < 1e-15);
  CHECK(max_abs(s.even + s.odd - m) < 1e-15);
}

TEST_CASE("even_odd_split: symplectic blocks") {
  Rng rng(4);
  const RealMatrix m = random_hermitian<double>(6, rng);
  const auto s = even_odd_split<double>(m, SymplecticBeta(3));
  const Eigen::Index n = 3;
  // Even part: [[A, B], [-B, A]]; odd part: [[C, D], [D, -C]].
  CHECK(max_abs(s.even.topLeftCorner(n, n) - s.even.bottomRightCorner(n, n)) < 1e-15);
  CHECK(max_abs(s.even.topRightCorner(n, n) + s.even.bottomLeftCorner(n, n)) < 1e-15);
  CHECK(max_abs(s.odd.topLeftCorner(n, n) + s.odd.bottomRightCorner(n, n)) < 1e-15);
  CHECK(max_abs(s.odd.topRightCorner(n, n) - s.odd.bottomLeftCorner(n, n)) < 1e-15);
  const RealMatrix beta = canon::testing::beta_matrix(n);
  // Even commutes with beta, odd anticommutes.
  CHECK(max_abs(beta * s.even - s.even * beta) < 1e-14);
  CHECK(max_abs(beta * s.odd + s.odd * beta) < 1e-14);
}

TEST_CASE("even_odd_split: dimension mismatch") {
  try {
    even_odd_split<double>(RealMatrix::Identity(3, 3), SymplecticBeta(2));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("invariant_trace: examples") {
  RealMatrix m(2, 2);
  m << 2, 1, 1, 3;
  // g M = [[2, 1], [-1, -3]]: trace -1, (gM)^2 trace 4 - 1 - 1 + 9 = 11.
  CHECK(invariant_trace<double>(m, metric(1, 1), 1) == doctest::Approx(-1.0));
  CHECK(invariant_trace<double>(m, metric(1, 1), 2) == doctest::Approx(11.0));
  // beta M = [[1, 3], [-2, -1]]: (beta M)^2 = [[-5, 0], [0, -5]].
  CHECK(invariant_trace<double>(m, SymplecticBeta(1), 2) == doctest::Approx(-10.0));
  CHECK_THROWS_AS(invariant_trace<double>(m, SymplecticBeta(1), 3), Error);
  CHECK_THROWS_AS(invariant_trace<double>(m, metric(1, 1), 0), Error);
}

TEST_CASE_TEMPLATE("invariant_trace: invariant under group congruence", F, double, Complex) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index m = static_cast<Eigen::Index>(rng.index(4));
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(4));
    const std::vector<QuadraticForm> forms{metric(m, n), SymplecticBeta(n)};
    for (const auto& form : forms) {
      const Eigen::Index dim = form_dim(form);
      const Matrix<F> v = random_spd<F>(dim, 10.0, rng);
      const Matrix<F> s = sample_group_element<F>(form, SampleKind::General, 1000 + t, 1.0);
      const Matrix<F> w = s.adjoint() * v * s;
      for (int l = 2; l <= 4; l += 2) {
        const double before = invariant_trace<F>(v, form, l);
        const double after = invariant_trace<F>(w, form, l);
        const double scale = std::pow(w.norm(), l);
        CHECK(std::abs(before - after) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("quartic_form and odd_norm: examples") {
  RealMatrix m(2, 2);
  m << 2, 1, 1, 3;
  CHECK(quartic_form<double>(m) == 13.0);
  CHECK(odd_norm<double>(m, metric(1, 1)) == doctest::Approx(2.0));
  CHECK(odd_norm<double>(m, metric(2, 0)) == 0.0);
  // beta-odd part of [[2,1],[1,3]] is [[-1/2, 1], [1, 1/2]]: norm^2 = 2.5.
  CHECK(odd_norm<double>(m, SymplecticBeta(1)) == doctest::Approx(2.5));

  // Boosted diag(a, b): closed form a^2 + b^2 + 2 (a + b)^2 sinh^2 cosh^2.
  const double a = 1.0, b = 2.0, mu = 0.7;
  RealMatrix dm = RealMatrix::Zero(2, 2);
  dm(0, 0) = a;
  dm(1, 1) = b;
  const RealMatrix bo = boost(MetricG(1, 1), 0, 1, mu);
  const RealMatrix boosted = bo.transpose() * dm * bo;
  const double sc = std::sinh(mu) * std::cosh(mu);
  CHECK(quartic_form<double>(boosted) == doctest::Approx(a * a + b * b + 2 * (a + b) * (a + b) * sc * sc));
}

TEST_CASE_TEMPLATE("quartic_form: bounded by tr(M^2)", F, double, Complex) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(8));
    const Matrix<F> m = random_hermitian<F>(n, rng);
    CHECK(quartic_form<F>(m) <= std::real((m * m).trace()) * (1 + 1e-12));
    const auto form = metric(n / 2, n - n / 2);
    const auto split = even_odd_split<F>(m, form);
    // The split is orthogonal: ||M||^2 = ||even||^2 + ||odd||^2.
    CHECK(split.even.squaredNorm() + split.odd.squaredNorm() == doctest::Approx(m.squaredNorm()));
  }
}
