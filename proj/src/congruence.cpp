#include "canon/congruence.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include "canon/random.hpp"

namespace canon {

QuadraticForm GroupTag::form() const {
  switch (kind) {
    case GroupKind::Orthogonal: return MetricG(m, 0);
    case GroupKind::Pseudo: return MetricG(m, n);
    case GroupKind::Symplectic: return SymplecticBeta(m);
  }
  return MetricG(m, 0);
}

std::string GroupTag::name() const {
  switch (kind) {
    case GroupKind::Orthogonal: return "orthogonal(" + std::to_string(m) + ")";
    case GroupKind::Pseudo: return "pseudo(" + std::to_string(m) + "," + std::to_string(n) + ")";
    case GroupKind::Symplectic: return "symplectic(" + std::to_string(m) + ")";
  }
  return "unknown";
}

namespace {

template <Field F>
void fill_residuals(CongruenceResult<F>& r, const SpdMatrix<F>& v) {
  const Matrix<F> j = form_matrix(r.group.form()).template cast<F>();
  r.form_residual = max_abs((r.transform.adjoint() * j * r.transform - j).eval());
  const Matrix<F> diag = r.transform.adjoint() * v.matrix() * r.transform;
  Matrix<F> expected = r.d_squared.template cast<F>().asDiagonal();
  r.diag_residual = max_abs((diag - expected).eval()) / max_abs(v.matrix());
  if (v.condition() > kIllConditionedThreshold) {
    r.warnings.emplace_back("IllConditioned: cond(V) = " + std::to_string(v.condition()));
  }
}

// Forces det S = +1: real S flips its last column (keeps S^T J S and the
// diagonal of S^T V S when J is diagonal), complex S takes a global phase.
template <Field F>
void fix_determinant(Matrix<F>& s) {
  const F det = s.determinant();
  if constexpr (is_complex_v<F>) {
    const double angle = std::arg(det) / static_cast<double>(s.rows());
    s *= std::polar(1.0, -angle);
  } else {
    if (det < 0.0) s.col(s.cols() - 1) *= -1.0;
  }
}

// Permutation helper: returns columns of `a` in `order`.
template <Field F>
Matrix<F> take_columns(const Matrix<F>& a, const std::vector<Eigen::Index>& order) {
  Matrix<F> out(a.rows(), static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = a.col(order[k]);
  return out;
}

// Delta = [[I, -iI], [I, iI]] / sqrt 2.
ComplexMatrix delta_matrix(Eigen::Index n) {
  const Complex i(0.0, 1.0);
  ComplexMatrix d(2 * n, 2 * n);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  d << id, -i * id, id, i * id;
  return d / std::numbers::sqrt2;
}

}  // namespace

template <Field F>
CongruenceResult<F> orthogonal_congruence(const SpdMatrix<F>& v) {
  CongruenceResult<F> r;
  r.transform = v.eigen().vectors;
  r.d_squared = v.eigen().values;
  r.group = {GroupKind::Orthogonal, v.dim(), 0};
  fix_determinant(r.transform);
  fill_residuals(r, v);
  return r;
}

template <Field F>
CongruenceResult<F> pseudo_congruence(const SpdMatrix<F>& v, Eigen::Index m, Eigen::Index n) {
  const MetricG g(m, n);
  if (g.dim() != v.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "signature (" + std::to_string(m) + "," +
                                                  std::to_string(n) + ") does not match dimension " +
                                                  std::to_string(v.dim()));
  }
  const Matrix<F> inv_sqrt = spd_power(v, -0.5).matrix();
  const Matrix<F> k = inv_sqrt * g.diagonal().cast<F>().asDiagonal() * inv_sqrt;
  const auto e = eig_hermitian<F>((0.5 * (k + k.adjoint())).eval(), v.tolerances());

  const Eigen::Index positives = (e.values.array() > 0.0).count();
  if (positives != m || (e.values.array() == 0.0).any()) {
    throw Error(ErrorCode::SignatureMismatch,
                "V^{-1/2} g V^{-1/2} has " + std::to_string(positives) + " positive eigenvalues, expected " +
                    std::to_string(m));
  }
  // Ascending values: negatives occupy [0, n) already in descending |lambda|;
  // the positives [n, N) are wanted descending, stably.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(v.dim()));
  std::iota(order.begin(), order.end(), 0);
  std::vector<Eigen::Index> pos(order.begin() + n, order.end());
  std::stable_sort(pos.begin(), pos.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return e.values(a) > e.values(b); });
  std::vector<Eigen::Index> ordered(pos);
  ordered.insert(ordered.end(), order.begin(), order.begin() + n);

  CongruenceResult<F> r;
  r.group = {GroupKind::Pseudo, m, n};
  r.d_squared.resize(v.dim());
  RealVector scale(v.dim());
  for (std::size_t c = 0; c < ordered.size(); ++c) {
    const double lambda = std::abs(e.values(ordered[c]));
    r.d_squared(static_cast<Eigen::Index>(c)) = 1.0 / lambda;
    scale(static_cast<Eigen::Index>(c)) = 1.0 / std::sqrt(lambda);
  }
  const Matrix<F> rot = take_columns(e.vectors, ordered);
  r.transform = inv_sqrt * rot * scale.cast<F>().asDiagonal();
  fix_determinant(r.transform);
  fill_residuals(r, v);
  return r;
}

template <Field F>
WilliamsonResult<F> williamson(const SpdMatrix<F>& v) {
  if (v.dim() % 2 != 0) throw Error(ErrorCode::OddDimension, "Williamson form needs even dimension");
  const Eigen::Index n = v.dim() / 2;
  const SymplecticBeta beta(n);
  const Matrix<F> inv_sqrt = spd_power(v, -0.5).matrix();
  const Matrix<F> skew = inv_sqrt * beta.matrix().cast<F>() * inv_sqrt;

  Matrix<F> rot;       // columns in (k, n+k) pairs
  RealVector omega;    // per pair, descending
  if constexpr (is_complex_v<F>) {
    // M is anti-hermitian; eigenvalues of iM are -omega.
    const ComplexMatrix im = Complex(0.0, 1.0) * skew;
    const auto e = eig_hermitian<Complex>((0.5 * (im + im.adjoint())).eval(), v.tolerances());
    if (e.values(n - 1) >= 0.0 || e.values(n) <= 0.0) {
      throw Error(ErrorCode::SignatureMismatch, "i V^{-1/2} beta V^{-1/2} does not have signature (n, n)");
    }
    std::vector<Eigen::Index> neg(static_cast<std::size_t>(n));
    std::iota(neg.begin(), neg.end(), n);
    std::stable_sort(neg.begin(), neg.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return e.values(a) > e.values(b); });
    omega = -e.values.head(n);
    const double scale = e.values.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double mismatch = std::abs(omega(k) - e.values(neg[static_cast<std::size_t>(k)]));
      if (mismatch > v.tolerances().eig(v.dim()) * scale) {
        throw Error(ErrorCode::UnpairedSpectrum,
                    "spectrum of V^{-1} beta is not +/- paired; no S with S^dagger beta S = beta "
                    "brings V to diag(kappa, kappa)");
      }
    }
    ComplexMatrix u(2 * n, 2 * n);
    u.leftCols(n) = e.vectors.leftCols(n);
    for (Eigen::Index k = 0; k < n; ++k) u.col(n + k) = e.vectors.col(neg[static_cast<std::size_t>(k)]);
    rot = u * delta_matrix(n);
  } else {
    const AntisymCanonical canonical = antisym_canonical(skew, v.tolerances());
    if ((canonical.signs.array() < 0.0).any()) {
      throw Error(ErrorCode::NumericalBreakdown, "orientation of V^{-1/2} beta V^{-1/2} is inconsistent");
    }
    rot = canonical.rotation;
    omega = canonical.omega;
  }

  // kappa = 1/omega descending, i.e. omega ascending; permute matched pairs.
  std::vector<Eigen::Index> pairs(static_cast<std::size_t>(n));
  std::iota(pairs.begin(), pairs.end(), 0);
  std::stable_sort(pairs.begin(), pairs.end(), [&](Eigen::Index a, Eigen::Index b) { return omega(a) < omega(b); });
  std::vector<Eigen::Index> cols;
  for (auto p : pairs) cols.push_back(p);
  for (auto p : pairs) cols.push_back(n + p);

  WilliamsonResult<F> w;
  w.kappa.resize(n);
  RealVector scale(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double om = omega(pairs[static_cast<std::size_t>(k)]);
    w.kappa(k) = 1.0 / om;
    scale(k) = scale(n + k) = 1.0 / std::sqrt(om);
  }
  auto& r = w.congruence;
  r.group = {GroupKind::Symplectic, n, 0};
  r.d_squared.resize(2 * n);
  r.d_squared << w.kappa, w.kappa;
  r.transform = inv_sqrt * take_columns(rot, cols) * scale.cast<F>().asDiagonal();
  if constexpr (is_complex_v<F>) fix_determinant(r.transform);
  fill_residuals(r, v);
  return w;
}

template <Field F>
GroupReport<F> group_check(const Matrix<F>& s, const QuadraticForm& form, double tol) {
  if (s.rows() != s.cols() || s.rows() != form_dim(form)) {
    throw Error(ErrorCode::DimensionMismatch, "transform does not match form " + describe(form));
  }
  const Matrix<F> j = form_matrix(form).cast<F>();
  GroupReport<F> rep;
  rep.form_residual = max_abs((s.adjoint() * j * s - j).eval());
  rep.det = s.determinant();
  rep.pass = rep.form_residual <= tol && std::abs(rep.det - F(1.0)) <= tol;
  return rep;
}

RealMatrix boost(const MetricG& g, Eigen::Index i, Eigen::Index j, double mu) {
  if (i < 0 || i >= g.m() || j < g.m() || j >= g.dim()) {
    throw Error(ErrorCode::InvalidArgument, "boost plane must pair a positive and a negative direction");
  }
  RealMatrix s = RealMatrix::Identity(g.dim(), g.dim());
  s(i, i) = s(j, j) = std::cosh(mu);
  s(i, j) = s(j, i) = std::sinh(mu);
  return s;
}

RealMatrix squeeze(const SymplecticBeta& beta, Eigen::Index k, double t) {
  if (k < 0 || k >= beta.n()) throw Error(ErrorCode::InvalidArgument, "squeeze mode out of range");
  RealMatrix s = RealMatrix::Identity(beta.dim(), beta.dim());
  s(k, k) = std::exp(t);
  s(beta.n() + k, beta.n() + k) = std::exp(-t);
  return s;
}

RealMatrix unitary_to_symplectic(const ComplexMatrix& u) {
  const Eigen::Index n = u.rows();
  RealMatrix s(2 * n, 2 * n);
  s << u.real(), u.imag(), -u.imag(), u.real();
  return s;
}

namespace {

template <Field F>
Matrix<F> compact_element(const QuadraticForm& form, Rng& rng) {
  if (const auto* g = std::get_if<MetricG>(&form)) {
    Matrix<F> s = Matrix<F>::Zero(g->dim(), g->dim());
    if (g->m() > 0) s.topLeftCorner(g->m(), g->m()) = random_special_unitary<F>(g->m(), rng);
    if (g->n() > 0) s.bottomRightCorner(g->n(), g->n()) = random_special_unitary<F>(g->n(), rng);
    return s;
  }
  const auto& beta = std::get<SymplecticBeta>(form);
  if constexpr (is_complex_v<F>) {
    // U(n) x U(n) = Delta^dagger diag(U1, U2) Delta commutes with beta.
    const Eigen::Index n = beta.n();
    ComplexMatrix blocks = ComplexMatrix::Zero(2 * n, 2 * n);
    blocks.topLeftCorner(n, n) = random_unitary<Complex>(n, rng);
    blocks.bottomRightCorner(n, n) = random_unitary<Complex>(n, rng);
    const ComplexMatrix d = delta_matrix(n);
    ComplexMatrix s = d.adjoint() * blocks * d;
    const Complex det = s.determinant();
    return s * std::polar(1.0, -std::arg(det) / static_cast<double>(2 * n));
  } else {
    return unitary_to_symplectic(random_unitary<Complex>(beta.n(), rng));
  }
}

RealMatrix noncompact_element(const QuadraticForm& form, Rng& rng, double mu_max) {
  const double mu = rng.uniform(-mu_max, mu_max);
  if (const auto* g = std::get_if<MetricG>(&form)) {
    if (g->m() == 0 || g->n() == 0) return RealMatrix::Identity(g->dim(), g->dim());
    const auto i = static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(g->m())));
    const auto j = g->m() + static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(g->n())));
    return boost(*g, i, j, mu);
  }
  const auto& beta = std::get<SymplecticBeta>(form);
  const auto k = static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(beta.n())));
  return squeeze(beta, k, mu);
}

RealMatrix radial_element(const QuadraticForm& form, Rng& rng, double mu_max) {
  if (const auto* g = std::get_if<MetricG>(&form)) {
    RealMatrix s = RealMatrix::Identity(g->dim(), g->dim());
    for (Eigen::Index k = 0; k < std::min(g->m(), g->n()); ++k) {
      s = s * boost(*g, k, g->m() + k, rng.uniform(-mu_max, mu_max));
    }
    return s;
  }
  const auto& beta = std::get<SymplecticBeta>(form);
  RealMatrix s = RealMatrix::Identity(beta.dim(), beta.dim());
  for (Eigen::Index k = 0; k < beta.n(); ++k) s = s * squeeze(beta, k, rng.uniform(-mu_max, mu_max));
  return s;
}

}  // namespace

template <Field F>
Matrix<F> sample_group_element(const QuadraticForm& form, SampleKind kind, std::uint64_t seed, double mu_max) {
  Rng rng(seed);
  switch (kind) {
    case SampleKind::Compact: return compact_element<F>(form, rng);
    case SampleKind::Noncompact: return noncompact_element(form, rng, mu_max).cast<F>();
    case SampleKind::General: {
      const Matrix<F> left = compact_element<F>(form, rng);
      const Matrix<F> middle = radial_element(form, rng, mu_max).cast<F>();
      const Matrix<F> right = compact_element<F>(form, rng);
      return left * middle * right;
    }
  }
  return Matrix<F>::Identity(form_dim(form), form_dim(form));
}

template CongruenceResult<double> orthogonal_congruence<double>(const SpdMatrix<double>&);
template CongruenceResult<Complex> orthogonal_congruence<Complex>(const SpdMatrix<Complex>&);
template CongruenceResult<double> pseudo_congruence<double>(const SpdMatrix<double>&, Eigen::Index, Eigen::Index);
template CongruenceResult<Complex> pseudo_congruence<Complex>(const SpdMatrix<Complex>&, Eigen::Index,
                                                              Eigen::Index);
template WilliamsonResult<double> williamson<double>(const SpdMatrix<double>&);
template WilliamsonResult<Complex> williamson<Complex>(const SpdMatrix<Complex>&);
template GroupReport<double> group_check<double>(const Matrix<double>&, const QuadraticForm&, double);
template GroupReport<Complex> group_check<Complex>(const Matrix<Complex>&, const QuadraticForm&, double);
template Matrix<double> sample_group_element<double>(const QuadraticForm&, SampleKind, std::uint64_t, double);
template Matrix<Complex> sample_group_element<Complex>(const QuadraticForm&, SampleKind, std::uint64_t, double);

}  // namespace canon
