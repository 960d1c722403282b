#include "doctest.h"

#include "canon/congruence.hpp"
#include "test_support.hpp"

using namespace canon;
namespace ct = canon::testing;

namespace {

template <Field F>
SpdMatrix<F> spd(const Matrix<F>& a) {
  return SpdMatrix<F>::make(a);
}

RealMatrix mat2(double a, double b, double c, double d) {
  RealMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

template <Field F>
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

// Residual checks computed here with plain products, independent of the
// values the library reports about itself.
template <Field F>
void check_congruence(const Matrix<F>& v, const CongruenceResult<F>& r, const RealMatrix& j) {
  const Matrix<F>& s = r.transform;
  const Matrix<F> jf = j.cast<F>();
  CHECK(max_abs(s.adjoint() * jf * s - jf) <= 1e-8);
  const Matrix<F> d = s.adjoint() * v * s;
  CHECK(max_off_diagonal(d) <= 1e-8 * max_abs(v));
  CHECK(max_abs(d.diagonal().real() - r.d_squared) <= 1e-8 * max_abs(v));
  CHECK(std::abs(s.determinant() - F(1.0)) <= 1e-8);
}

}  // namespace

TEST_CASE("orthogonal_congruence: examples") {
  const RealMatrix v = mat2(4, 0, 0, 9);
  const auto r = orthogonal_congruence(spd<double>(v));
  CHECK(r.d_squared(0) == doctest::Approx(4.0));
  CHECK(r.d_squared(1) == doctest::Approx(9.0));
  CHECK(max_abs(r.transform - RealMatrix::Identity(2, 2)) < 1e-15);
  CHECK(r.d()(1) == doctest::Approx(3.0));

  const auto r2 = orthogonal_congruence(spd<double>(mat2(2, 1, 1, 2)));
  CHECK(r2.d_squared(0) == doctest::Approx(1.0));
  CHECK(r2.d_squared(1) == doctest::Approx(3.0));
  check_congruence<double>(mat2(2, 1, 1, 2), r2, RealMatrix::Identity(2, 2));
}

TEST_CASE("pseudo_congruence: 2x2 closed forms") {
  // g V for V = [[a, b], [b, c]], g = diag(1, -1) has char poly
  // x^2 - (a - c) x - (ac - b^2).
  const RealMatrix v = mat2(2, 1, 1, 2);
  const auto r = pseudo_congruence(spd<double>(v), 1, 1);
  const auto [lo, hi] = ct::eig2x2(2, 1, -1, -2);
  CHECK(r.d_squared(0) == doctest::Approx(std::abs(hi)).epsilon(1e-12));
  CHECK(r.d_squared(1) == doctest::Approx(std::abs(lo)).epsilon(1e-12));
  CHECK(r.d_squared(0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  check_congruence<double>(v, r, ct::g_matrix(1, 1));

  const auto diag = pseudo_congruence(spd<double>(mat2(4, 0, 0, 9)), 1, 1);
  CHECK(max_abs(diag.transform - RealMatrix::Identity(2, 2)) < 1e-14);
  CHECK(diag.d_squared(0) == doctest::Approx(4.0));
  CHECK(diag.d_squared(1) == doctest::Approx(9.0));

  ComplexMatrix vc(2, 2);
  vc << 2, Complex(0, 1), Complex(0, -1), 2;
  const auto rc = pseudo_congruence(spd<Complex>(vc), 1, 1);
  CHECK(rc.d_squared(0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(rc.d_squared(1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  check_congruence<Complex>(vc, rc, ct::g_matrix(1, 1));
}

TEST_CASE("pseudo_congruence: signature errors") {
  const auto v = spd<double>(RealMatrix::Identity(3, 3));
  CHECK(code_of<double>([&] { pseudo_congruence(v, 1, 1); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of<double>([&] { pseudo_congruence(v, -1, 4); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("williamson: closed forms") {
  const auto w = williamson(spd<double>(mat2(1, 0, 0, 4)));
  CHECK(w.kappa(0) == doctest::Approx(2.0).epsilon(1e-12));
  RealMatrix expected = RealMatrix::Zero(2, 2);
  expected(0, 0) = std::sqrt(2.0);
  expected(1, 1) = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(w.congruence.transform - expected) < 1e-12);

  const auto w2 = williamson(spd<double>(mat2(4, 0, 0, 9)));
  CHECK(w2.kappa(0) == doctest::Approx(6.0).epsilon(1e-12));

  // 2x2: kappa = sqrt(det V).
  const auto w3 = williamson(spd<double>(mat2(2, 1, 1, 2)));
  CHECK(w3.kappa(0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  check_congruence<double>(mat2(2, 1, 1, 2), w3.congruence, ct::beta_matrix(1));

  CHECK(code_of<double>([] { williamson(spd<double>(RealMatrix::Identity(3, 3))); }) == ErrorCode::OddDimension);
}

TEST_CASE("williamson: complex input needs a paired spectrum") {
  ComplexMatrix vc(2, 2);
  vc << 2, Complex(0, 1), Complex(0, -1), 2;
  CHECK(code_of<Complex>([&] { williamson(spd<Complex>(vc)); }) == ErrorCode::UnpairedSpectrum);

  // V = S^{-dagger} diag(kappa, kappa) S^{-1} with S in the group is paired.
  for (int t = 0; t < 10; ++t) {
    const Eigen::Index n = 1 + t % 4;
    Rng rng(500 + t);
    RealVector kappa(n);
    for (Eigen::Index k = 0; k < n; ++k) kappa(k) = rng.uniform(0.5, 4.0);
    RealVector dd(2 * n);
    dd << kappa, kappa;
    const ComplexMatrix s = sample_group_element<Complex>(SymplecticBeta(n), SampleKind::General, 600 + t, 1.0);
    const ComplexMatrix s_inv = s.inverse();
    const ComplexMatrix v = s_inv.adjoint() * dd.cast<Complex>().asDiagonal() * s_inv;
    const auto w = williamson(spd<Complex>(v));
    std::vector<double> expect = ct::to_std(kappa);
    CHECK(ct::multiset_rel_error(ct::to_std(w.kappa), expect) < 1e-9);
    check_congruence<Complex>(v, w.congruence, ct::beta_matrix(n));
  }
}

TEST_CASE_TEMPLATE("pseudo_congruence: random properties", F, double, Complex) {
  Rng rng(42);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng.index(8));
    const Eigen::Index m = static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(dim + 1)));
    const Matrix<F> v = random_spd<F>(dim, 100.0, rng);
    const auto r = pseudo_congruence(spd<F>(v), m, dim - m);
    check_congruence<F>(v, r, ct::g_matrix(m, dim - m));
    CHECK(ct::multiset_rel_error(ct::to_std(r.d_squared), ct::abs_eig_gv<F>(v, m)) < 1e-8);
    // d^2 ascends within each sign block.
    for (Eigen::Index k = 1; k < m; ++k) CHECK(r.d_squared(k) >= r.d_squared(k - 1) * (1 - 1e-12));
    for (Eigen::Index k = m + 1; k < dim; ++k) CHECK(r.d_squared(k) >= r.d_squared(k - 1) * (1 - 1e-12));

    // Scaling covariance: cV has d^2 scaled by c.
    const auto scaled = pseudo_congruence(spd<F>((2.5 * v).eval()), m, dim - m);
    CHECK(max_abs(scaled.d_squared - 2.5 * r.d_squared) < 1e-9 * 2.5 * r.d_squared.maxCoeff());

    // Group covariance: T^dagger V T has the same d^2 for T in the group.
    if (m > 0 && m < dim) {
      const Matrix<F> tg = sample_group_element<F>(metric(m, dim - m), SampleKind::General, 77 + t, 0.5);
      const auto moved = pseudo_congruence(spd<F>((tg.adjoint() * v * tg).eval()), m, dim - m);
      CHECK(ct::multiset_rel_error(ct::to_std(moved.d_squared), ct::to_std(r.d_squared)) < 1e-8);
    }
  }
}

TEST_CASE("williamson: random properties") {
  Rng rng(43);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(6));
    const RealMatrix v = random_spd<double>(2 * n, 100.0, rng);
    const auto w = williamson(spd<double>(v));
    check_congruence<double>(v, w.congruence, ct::beta_matrix(n));
    CHECK(max_abs(w.congruence.d_squared.head(n) - w.kappa) == 0.0);
    CHECK(max_abs(w.congruence.d_squared.tail(n) - w.kappa) == 0.0);
    const auto oracle = ct::positive_imaginary_parts(ct::general_spectrum<double>(ct::beta_times<double>(v)));
    CHECK(ct::multiset_rel_error(ct::to_std(w.kappa), oracle) < 1e-8);
    for (Eigen::Index k = 1; k < n; ++k) CHECK(w.kappa(k) <= w.kappa(k - 1));
  }
}

TEST_CASE_TEMPLATE("identity input gives identity transform", F, double, Complex) {
  for (Eigen::Index dim = 1; dim <= 6; ++dim) {
    const auto v = spd<F>(Matrix<F>::Identity(dim, dim));
    CHECK(max_abs(orthogonal_congruence(v).transform - Matrix<F>::Identity(dim, dim)) < 1e-14);
    for (Eigen::Index m = 0; m <= dim; ++m) {
      const auto r = pseudo_congruence(v, m, dim - m);
      CHECK(max_abs(r.transform - Matrix<F>::Identity(dim, dim)) < 1e-14);
      CHECK(max_abs(r.d_squared - RealVector::Ones(dim)) < 1e-14);
    }
    if (dim % 2 == 0) {
      const auto w = williamson(v);
      CHECK(max_abs(w.congruence.transform - Matrix<F>::Identity(dim, dim)) < 1e-14);
      CHECK(max_abs(w.kappa - RealVector::Ones(dim / 2)) < 1e-14);
    }
  }
}

TEST_CASE("ill-conditioned input is a warning") {
  // Only reachable with a looser positive-definiteness threshold.
  RealMatrix v = RealMatrix::Identity(2, 2);
  v(1, 1) = 1e-13;
  Tolerances loose;
  loose.pd = 1e-15;
  const auto r = orthogonal_congruence(SpdMatrix<double>::make(v, loose));
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings.front().rfind("IllConditioned", 0) == 0);
}

TEST_CASE("group_check: examples") {
  CHECK(group_check<double>(RealMatrix::Identity(2, 2), metric(1, 1), 1e-12).pass);
  const auto bad = group_check<double>(mat2(2, 0, 0, 3), metric(1, 1), 1e-8);
  CHECK_FALSE(bad.pass);
  CHECK(bad.form_residual == doctest::Approx(8.0));
  CHECK(bad.det == doctest::Approx(6.0));
  // Reflection preserves g but has det -1.
  const auto refl = group_check<double>(mat2(-1, 0, 0, 1), metric(1, 1), 1e-8);
  CHECK(refl.form_residual == 0.0);
  CHECK_FALSE(refl.pass);
  CHECK(group_check<double>(boost(MetricG(1, 1), 0, 1, 1.3), metric(1, 1), 1e-12).pass);
  CHECK(group_check<double>(squeeze(SymplecticBeta(2), 1, -0.8), SymplecticBeta(2), 1e-12).pass);
  CHECK_THROWS_AS(group_check<double>(RealMatrix::Identity(3, 3), metric(1, 1), 1e-8), Error);
}

TEST_CASE_TEMPLATE("sample_group_element: members of the group", F, double, Complex) {
  const std::vector<QuadraticForm> forms{metric(3, 0), metric(2, 3), metric(0, 2), metric(1, 4),
                                         SymplecticBeta(1), SymplecticBeta(3)};
  for (const auto& form : forms) {
    for (auto kind : {SampleKind::Compact, SampleKind::Noncompact, SampleKind::General}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Matrix<F> s = sample_group_element<F>(form, kind, seed);
        const Matrix<F> j = form_matrix(form).cast<F>();
        const double scale = std::max(1.0, max_abs(s) * max_abs(s));
        CHECK(max_abs(s.adjoint() * j * s - j) <= 1e-12 * scale);
        CHECK(std::abs(s.determinant() - F(1.0)) <= 1e-9 * scale);
        if (kind == SampleKind::Compact) {
          // Compact elements are also unitary.
          CHECK(max_abs(s.adjoint() * s - Matrix<F>::Identity(s.rows(), s.cols())) < 1e-12);
        }
        // Same seed, same element.
        CHECK(sample_group_element<F>(form, kind, seed) == s);
      }
    }
  }
}

TEST_CASE("boost and squeeze agree with the exponential map") {
  // Boost generator in the (0, 2) plane of metric(2, 1).
  RealMatrix k = RealMatrix::Zero(3, 3);
  k(0, 2) = k(2, 0) = 0.9;
  CHECK(max_abs(boost(MetricG(2, 1), 0, 2, 0.9) - ct::expm<double>(k)) < 1e-12);
  RealMatrix q = RealMatrix::Zero(4, 4);
  q(0, 0) = 0.4;
  q(2, 2) = -0.4;
  CHECK(max_abs(squeeze(SymplecticBeta(2), 0, 0.4) - ct::expm<double>(q)) < 1e-12);
  CHECK_THROWS_AS(boost(MetricG(2, 1), 0, 1, 0.3), Error);
}

TEST_CASE("unitary_to_symplectic: embeds U(n)") {
  Rng rng(9);
  const ComplexMatrix u = random_unitary<Complex>(3, rng);
  const RealMatrix s = unitary_to_symplectic(u);
  const RealMatrix b = ct::beta_matrix(3);
  CHECK(max_abs(s.transpose() * b * s - b) < 1e-12);
  CHECK(max_abs(s.transpose() * s - RealMatrix::Identity(6, 6)) < 1e-12);
}
