#include "canon/bases.hpp"

#include "canon/random.hpp"

namespace canon {

template <Field F>
VectorSet<F> VectorSet<F>::make(Matrix<F> columns) {
  detail::require_square_finite(columns, "vector set");
  return VectorSet(std::move(columns));
}

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::GramSchmidt: return "gram_schmidt";
    case BasisKind::SchweinlerWigner: return "schweinler_wigner";
    case BasisKind::Lorentz: return "lorentz";
    case BasisKind::Symplectic: return "symplectic";
  }
  return "unknown";
}

template <Field F>
SpdMatrix<F> gram(const VectorSet<F>& vs, const Tolerances& tol) {
  const Matrix<F> g = vs.vectors().adjoint() * vs.vectors();
  try {
    return SpdMatrix<F>::make(g, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) {
      throw Error(ErrorCode::DependentVectors, "vectors are linearly dependent (Gram matrix not positive definite)");
    }
    throw;
  }
}

template <Field F>
SpdMatrix<F> operator_matrix(const VectorSet<F>& vs, const Tolerances& tol) {
  const Matrix<F> m = vs.vectors() * vs.vectors().adjoint();
  try {
    return SpdMatrix<F>::make(m, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) {
      throw Error(ErrorCode::DependentVectors, "vectors are linearly dependent (operator not positive definite)");
    }
    throw;
  }
}

template <Field F>
Matrix<F> m_of_basis(const VectorSet<F>& vs, const Matrix<F>& z) {
  if (z.rows() != vs.dim() || z.cols() != vs.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "basis and vector set dimensions differ");
  }
  const Matrix<F> vz = vs.vectors().adjoint() * z;  // (v_j, z_k)
  Matrix<F> m = vz.adjoint() * vz;
  return (0.5 * (m + m.adjoint())).eval();
}

template <Field F>
QuadraticForm basis_form(const BasisResult<F>& basis) {
  const Eigen::Index dim = basis.basis.rows();
  switch (basis.kind) {
    case BasisKind::Lorentz: return MetricG(basis.m, basis.n);
    case BasisKind::Symplectic: return SymplecticBeta(basis.m);
    default: return MetricG(dim, 0);
  }
}

namespace {

template <Field F>
double form_residual(const Matrix<F>& z, const QuadraticForm& form) {
  const Matrix<F> j = form_matrix(form).cast<F>();
  return max_abs((z.adjoint() * j * z - j).eval());
}

template <Field F>
void finish(BasisResult<F>& r, const VectorSet<F>& vs) {
  r.m_of_z = m_of_basis(vs, r.basis);
  auto& d = r.diagnostics;
  d.m_diagonal = r.m_of_z.diagonal().real();
  d.quartic_value = quartic_form(r.m_of_z);
  d.diag_residual = max_off_diagonal(r.m_of_z) / max_abs(r.m_of_z);
  const QuadraticForm form = basis_form(r);
  d.residual = form_residual(r.basis, form);
  d.odd_norm = (r.kind == BasisKind::Lorentz || r.kind == BasisKind::Symplectic) ? odd_norm(r.m_of_z, form) : 0.0;
}

}  // namespace

template <Field F>
BasisResult<F> gram_schmidt(const VectorSet<F>& vs, const Tolerances& tol) {
  (void)gram(vs, tol);
  const Eigen::Index n = vs.dim();
  Matrix<F> z = vs.vectors();
  Matrix<F> r = Matrix<F>::Zero(n, n);
  // Modified Gram-Schmidt with one re-orthogonalization pass; V = Z R.
  for (Eigen::Index k = 0; k < n; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < k; ++i) {
        const F proj = z.col(i).dot(z.col(k));
        r(i, k) += proj;
        z.col(k) -= proj * z.col(i);
      }
    }
    const double norm = z.col(k).norm();
    if (norm <= tol.pd * vs.vectors().col(k).norm()) {
      throw Error(ErrorCode::DependentVectors, "Gram-Schmidt breakdown at vector " + std::to_string(k));
    }
    r(k, k) = norm;
    z.col(k) /= norm;
  }
  BasisResult<F> out;
  out.kind = BasisKind::GramSchmidt;
  out.basis = z;
  out.transform = r.template triangularView<Eigen::Upper>().solve(Matrix<F>::Identity(n, n));
  finish(out, vs);
  return out;
}

template <Field F>
BasisResult<F> schweinler_wigner(const VectorSet<F>& vs, const Tolerances& tol) {
  const SpdMatrix<F> g = gram(vs, tol);
  const auto& e = g.eigen();
  const RealVector inv_sqrt = e.values.cwiseSqrt().cwiseInverse();
  BasisResult<F> out;
  out.kind = BasisKind::SchweinlerWigner;
  out.transform = e.vectors * inv_sqrt.cast<F>().asDiagonal();
  out.basis = vs.vectors() * out.transform;
  finish(out, vs);
  const double scale = e.values(e.values.size() - 1);
  for (Eigen::Index k = 1; k < e.values.size(); ++k) {
    if (e.values(k) - e.values(k - 1) < 1e-8 * scale) out.diagnostics.degenerate = true;
  }
  return out;
}

namespace {

template <Field F>
BasisResult<F> from_congruence(const VectorSet<F>& vs, const CongruenceResult<F>& c, BasisKind kind) {
  BasisResult<F> out;
  out.kind = kind;
  out.basis = c.transform;
  out.transform = vs.vectors().partialPivLu().solve(c.transform);
  return out;
}

}  // namespace

template <Field F>
BasisResult<F> lorentz_basis(const VectorSet<F>& vs, Eigen::Index m, Eigen::Index n, const Tolerances& tol) {
  const SpdMatrix<F> mhat = operator_matrix(vs, tol);
  auto out = from_congruence(vs, pseudo_congruence(mhat, m, n), BasisKind::Lorentz);
  out.m = m;
  out.n = n;
  finish(out, vs);
  return out;
}

template <Field F>
BasisResult<F> symplectic_basis(const VectorSet<F>& vs, const Tolerances& tol) {
  if (vs.dim() % 2 != 0) throw Error(ErrorCode::OddDimension, "symplectic basis needs even dimension");
  const SpdMatrix<F> mhat = operator_matrix(vs, tol);
  const auto w = williamson(mhat);
  auto out = from_congruence(vs, w.congruence, BasisKind::Symplectic);
  out.m = vs.dim() / 2;
  finish(out, vs);
  return out;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <Field F>
double invariant_of(const Matrix<F>& m, const BasisResult<F>& basis) {
  if (basis.kind == BasisKind::Lorentz || basis.kind == BasisKind::Symplectic) {
    return invariant_trace(m, basis_form(basis), 2);
  }
  return m.squaredNorm();
}

}  // namespace

template <Field F>
AuditReport extremum_audit(const VectorSet<F>& vs, const BasisResult<F>& basis, int trials, std::uint64_t seed,
                           double tolerance) {
  if (trials < 0) throw Error(ErrorCode::InvalidArgument, "trial count must be non-negative");
  if (basis.basis.rows() != vs.dim() || basis.basis.cols() != vs.dim()) {
    throw Error(ErrorCode::KindMismatch, "basis dimension does not match the vector set");
  }
  const QuadraticForm form = basis_form(basis);
  const Matrix<F> mz = m_of_basis(vs, basis.basis);
  const double scale = mz.squaredNorm();
  if (form_residual(basis.basis, form) > 1e-6 * std::max(1.0, max_abs(basis.basis))) {
    throw Error(ErrorCode::KindMismatch, "basis does not satisfy the normalization of kind " + to_string(basis.kind));
  }
  const bool noncompact = basis.kind == BasisKind::Lorentz || basis.kind == BasisKind::Symplectic;
  const Eigen::Index dim = vs.dim();

  AuditReport rep;
  rep.seed = seed;
  rep.tolerance = tolerance;
  rep.baseline_quartic = quartic_form(mz);
  rep.odd_norm_baseline = noncompact ? odd_norm(mz, form) : 0.0;
  rep.invariant_baseline = invariant_of(mz, basis);

  auto record_drift = [&](const Matrix<F>& moved) {
    rep.invariant_drift = std::max(rep.invariant_drift, std::abs(invariant_of(moved, basis) - rep.invariant_baseline) / scale);
  };

  for (int t = 0; t < trials; ++t) {
    const auto tt = static_cast<std::uint64_t>(t);
    Matrix<F> k;
    Matrix<F> s;
    if (noncompact) {
      k = sample_group_element<F>(form, SampleKind::Compact, mix_seed(seed, 2 * tt));
      s = sample_group_element<F>(form, SampleKind::General, mix_seed(seed, 2 * tt + 1));
    } else {
      Rng rk(mix_seed(seed, 2 * tt));
      Rng rs(mix_seed(seed, 2 * tt + 1));
      k = random_unitary<F>(dim, rk);
      s = random_unitary<F>(dim, rs);
    }
    const Matrix<F> mk = k.adjoint() * mz * k;
    const Matrix<F> ms = s.adjoint() * mz * s;
    rep.perturbed_quartics.push_back(quartic_form(mk));
    rep.odd_norms_perturbed.push_back(noncompact ? odd_norm(ms, form) : 0.0);
    record_drift(mk);
    record_drift(ms);
  }

  if (noncompact) {
    bool has_direction = true;
    if (basis.kind == BasisKind::Lorentz) has_direction = basis.m > 0 && basis.n > 0;
    for (int step = 0; step <= 8 && has_direction; ++step) {
      const double mu = 0.25 * step;
      Matrix<F> s;
      if (basis.kind == BasisKind::Lorentz) {
        s = boost(MetricG(basis.m, basis.n), 0, basis.m, mu).template cast<F>();
      } else {
        s = squeeze(SymplecticBeta(basis.m), 0, mu).template cast<F>();
      }
      const Matrix<F> moved = s.adjoint() * mz * s;
      rep.growth_parameters.push_back(mu);
      rep.growth_curve.push_back(quartic_form(moved));
      record_drift(moved);
    }
  }

  const double qtol = tolerance * std::max(rep.baseline_quartic, 1.0);
  rep.quartic_maximal = true;
  for (double q : rep.perturbed_quartics) rep.quartic_maximal = rep.quartic_maximal && q <= rep.baseline_quartic + qtol;
  rep.odd_minimal = true;
  for (double o : rep.odd_norms_perturbed) rep.odd_minimal = rep.odd_minimal && rep.odd_norm_baseline <= o + tolerance * scale;
  rep.invariant_stable = rep.invariant_drift <= tolerance;
  rep.growth_monotone = true;
  for (std::size_t i = 1; i < rep.growth_curve.size(); ++i) {
    rep.growth_monotone = rep.growth_monotone && rep.growth_curve[i] >= rep.growth_curve[i - 1] - qtol;
  }
  return rep;
}

double unboundedness_formula(double a, double b, double mu, Family family) {
  if (family == Family::SO11) {
    const double sc = std::sinh(mu) * std::cosh(mu);
    return a * a + b * b + 2.0 * (a + b) * (a + b) * sc * sc;
  }
  const double mu4 = std::pow(mu, 4);
  return mu4 * a * a + b * b / mu4;
}

double unboundedness_by_congruence(double a, double b, double mu, Family family) {
  RealMatrix s;
  if (family == Family::SO11) {
    s = boost(MetricG(1, 1), 0, 1, mu);
  } else {
    s = RealMatrix(2, 2);
    s << mu, 0.0, 0.0, 1.0 / mu;
  }
  RealMatrix m(2, 2);
  m << a, 0.0, 0.0, b;
  return quartic_form<double>(s.transpose() * m * s);
}

double unboundedness_demo(double a, double b, double mu, Family family) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "a and b must be positive");
  }
  if (!std::isfinite(mu)) throw Error(ErrorCode::InvalidArgument, "mu must be finite");
  if (family == Family::SP2 && mu == 0.0) throw Error(ErrorCode::ZeroParameter, "diag(mu, 1/mu) needs mu != 0");
  const double closed = unboundedness_formula(a, b, mu, family);
  const double direct = unboundedness_by_congruence(a, b, mu, family);
  if (std::abs(closed - direct) > 1e-10 * std::max(std::abs(direct), 1.0)) {
    throw Error(ErrorCode::NumericalBreakdown, "closed form and explicit congruence disagree");
  }
  return closed;
}

template class VectorSet<double>;
template class VectorSet<Complex>;
template SpdMatrix<double> gram<double>(const VectorSet<double>&, const Tolerances&);
template SpdMatrix<Complex> gram<Complex>(const VectorSet<Complex>&, const Tolerances&);
template SpdMatrix<double> operator_matrix<double>(const VectorSet<double>&, const Tolerances&);
template SpdMatrix<Complex> operator_matrix<Complex>(const VectorSet<Complex>&, const Tolerances&);
template Matrix<double> m_of_basis<double>(const VectorSet<double>&, const Matrix<double>&);
template Matrix<Complex> m_of_basis<Complex>(const VectorSet<Complex>&, const Matrix<Complex>&);
template QuadraticForm basis_form<double>(const BasisResult<double>&);
template QuadraticForm basis_form<Complex>(const BasisResult<Complex>&);
template BasisResult<double> gram_schmidt<double>(const VectorSet<double>&, const Tolerances&);
template BasisResult<Complex> gram_schmidt<Complex>(const VectorSet<Complex>&, const Tolerances&);
template BasisResult<double> schweinler_wigner<double>(const VectorSet<double>&, const Tolerances&);
template BasisResult<Complex> schweinler_wigner<Complex>(const VectorSet<Complex>&, const Tolerances&);
template BasisResult<double> lorentz_basis<double>(const VectorSet<double>&, Eigen::Index, Eigen::Index,
                                                   const Tolerances&);
template BasisResult<Complex> lorentz_basis<Complex>(const VectorSet<Complex>&, Eigen::Index, Eigen::Index,
                                                     const Tolerances&);
template BasisResult<double> symplectic_basis<double>(const VectorSet<double>&, const Tolerances&);
template BasisResult<Complex> symplectic_basis<Complex>(const VectorSet<Complex>&, const Tolerances&);
template AuditReport extremum_audit<double>(const VectorSet<double>&, const BasisResult<double>&, int,
                                            std::uint64_t, double);
template AuditReport extremum_audit<Complex>(const VectorSet<Complex>&, const BasisResult<Complex>&, int,
                                             std::uint64_t, double);

}  // namespace canon
