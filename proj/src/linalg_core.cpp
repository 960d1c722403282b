#include "canon/linalg_core.hpp"

#include <numbers>
#include <vector>

namespace canon {

namespace detail {

template <Field F>
void require_square_finite(const Matrix<F>& a, std::string_view what) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw Error(ErrorCode::NotSquare, std::string(what) + " must be square and non-empty");
  }
  if (!all_finite(a)) throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN/Inf entries");
}

template <Field F>
double hermitian_defect(const Matrix<F>& a) {
  return max_abs((a - a.adjoint()).eval());
}

}  // namespace detail

namespace {

// Relative eigenvalue gap below which neighbouring eigenvalues are treated
// as one degenerate cluster.
constexpr double kDegenerateGap = 1e-10;

// Ties in magnitude closer than this (relative) are broken by lowest index.
constexpr double kTieBreak = 1e-9;

template <Field F>
F unit_phase(F x) {
  if constexpr (is_complex_v<F>) {
    return std::conj(x) / std::abs(x);
  } else {
    return x < 0.0 ? -1.0 : 1.0;
  }
}

template <Field F>
void normalize_phase(Vector<F>& col) {
  const double biggest = max_abs(col);
  if (biggest == 0.0) return;
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    if (std::abs(col(i)) >= biggest * (1.0 - kTieBreak)) {
      col *= unit_phase(col(i));
      if constexpr (is_complex_v<F>) col(i) = std::abs(col(i));
      return;
    }
  }
}

// Replaces the columns of `block` (an orthonormal basis of one eigenspace) by
// pivoted Gram-Schmidt applied to the projections of e_0, e_1, ... onto the
// space. Work happens in the coordinates c_j = block^dagger e_j.
template <Field F>
Matrix<F> canonical_cluster_basis(const Matrix<F>& block) {
  const Eigen::Index n = block.rows();
  const Eigen::Index d = block.cols();
  Matrix<F> coords = block.adjoint();  // column j = block^dagger e_j
  Matrix<F> chosen(d, d);
  for (Eigen::Index s = 0; s < d; ++s) {
    Matrix<F> resid = coords;
    if (s > 0) {
      const auto basis = chosen.leftCols(s);
      resid -= basis * (basis.adjoint() * coords);
    }
    const RealVector norms = resid.colwise().norm().transpose();
    const double best = norms.maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (norms(j) >= best * (1.0 - kTieBreak)) {
        pick = j;
        break;
      }
    }
    Vector<F> c = resid.col(pick);
    // One re-orthogonalization pass.
    if (s > 0) {
      const auto basis = chosen.leftCols(s);
      c -= basis * (basis.adjoint() * c);
    }
    chosen.col(s) = c / c.norm();
  }
  return block * chosen;
}

template <Field F>
EigenDecomposition<F> eig_unchecked(const Matrix<F>& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix<F>> solver(hermitian, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalBreakdown, "hermitian eigensolver did not converge");
  }
  EigenDecomposition<F> out{solver.eigenvalues(), solver.eigenvectors()};

  const Eigen::Index n = out.values.size();
  const double scale = std::max(out.values.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && out.values(stop) - out.values(stop - 1) <= kDegenerateGap * scale) ++stop;
    if (stop - start > 1) {
      out.vectors.middleCols(start, stop - start) =
          canonical_cluster_basis<F>(out.vectors.middleCols(start, stop - start));
    }
    start = stop;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector<F> col = out.vectors.col(k);
    normalize_phase(col);
    out.vectors.col(k) = col;
  }
  return out;
}

template <Field F>
Matrix<F> hermitian_part(const Matrix<F>& a) {
  return (0.5 * (a + a.adjoint())).eval();
}

template <Field F>
SpdReport classify(const RealVector& values, const Tolerances& tol) {
  SpdReport report;
  report.min_eigenvalue = values(0);
  report.max_eigenvalue = values(values.size() - 1);
  if (report.min_eigenvalue <= 0.0) {
    report.reason = SpdReason::NegativeEigenvalue;
  } else if (report.min_eigenvalue <= tol.pd * report.max_eigenvalue) {
    report.reason = SpdReason::BelowThreshold;
  } else {
    report.ok = true;
    report.reason = SpdReason::Ok;
  }
  return report;
}

}  // namespace

template <Field F>
EigenDecomposition<F> eig_hermitian(const Matrix<F>& a, const Tolerances& tol) {
  detail::require_square_finite(a, "eig_hermitian input");
  if (detail::hermitian_defect(a) > tol.symmetry * max_abs(a)) {
    throw Error(ErrorCode::NotHermitian, "eig_hermitian input is not hermitian");
  }
  return eig_unchecked<F>(hermitian_part(a));
}

template <Field F>
SpdReport check_spd(const Matrix<F>& a, const Tolerances& tol) {
  SpdReport report;
  if (a.rows() < 1 || a.rows() != a.cols()) {
    report.reason = SpdReason::NotSquare;
    return report;
  }
  if (!all_finite(a)) {
    report.reason = SpdReason::NonFinite;
    return report;
  }
  if (detail::hermitian_defect(a) > tol.symmetry * max_abs(a)) {
    report.reason = SpdReason::NotHermitian;
    return report;
  }
  Eigen::SelfAdjointEigenSolver<Matrix<F>> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  return classify<F>(solver.eigenvalues(), tol);
}

template <Field F>
SpdMatrix<F> SpdMatrix<F>::make(const Matrix<F>& a, const Tolerances& tol) {
  detail::require_square_finite(a, "SPD input");
  if (detail::hermitian_defect(a) > tol.symmetry * max_abs(a)) {
    throw Error(ErrorCode::NotHermitian, "matrix is not hermitian");
  }
  Matrix<F> sym = hermitian_part(a);
  EigenDecomposition<F> e = eig_unchecked<F>(sym);
  const SpdReport report = classify<F>(e.values, tol);
  if (!report.ok) {
    throw Error(ErrorCode::NotPositiveDefinite,
                std::string("matrix is not positive definite (") +
                    std::string(to_string(report.reason)) + ", lambda_min = " +
                    std::to_string(report.min_eigenvalue) + ")");
  }
  return SpdMatrix(std::move(sym), std::move(e), tol);
}

template <Field F>
SpdMatrix<F> spd_power(const SpdMatrix<F>& v, double p) {
  if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "exponent must be finite");
  const auto& e = v.eigen();
  const RealVector powered = e.values.array().pow(p).matrix();
  Matrix<F> out = e.vectors * powered.cast<F>().asDiagonal() * e.vectors.adjoint();
  out = hermitian_part(out);
  return SpdMatrix<F>::make(out, v.tolerances());
}

RealMatrix AntisymCanonical::block_form() const {
  const Eigen::Index n = pairs();
  RealMatrix out = RealMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out(k, n + k) = signs(k) * omega(k);
    out(n + k, k) = -signs(k) * omega(k);
  }
  return out;
}

AntisymCanonical antisym_canonical(const RealMatrix& m, const Tolerances& tol) {
  detail::require_square_finite(m, "antisym_canonical input");
  if (m.rows() % 2 != 0) throw Error(ErrorCode::OddDimension, "antisymmetric input must have even dimension");
  if (max_abs((m + m.transpose()).eval()) > tol.symmetry * max_abs(m)) {
    throw Error(ErrorCode::NotAntisymmetric, "input is not antisymmetric");
  }
  const Eigen::Index n = m.rows() / 2;
  const RealMatrix skew = 0.5 * (m - m.transpose());

  // iM is hermitian; M eta = i omega eta  <=>  (iM) eta = -omega eta, so the
  // n most negative eigenvalues of iM carry the positive omegas, largest first.
  const ComplexMatrix im = Complex(0.0, 1.0) * skew.cast<Complex>();
  const auto e = eig_unchecked<Complex>(im);
  const double largest = e.values.cwiseAbs().maxCoeff();
  const double smallest = e.values.cwiseAbs().minCoeff();
  if (largest == 0.0 || smallest <= tol.pd * largest) {
    throw Error(ErrorCode::Singular, "antisymmetric input is singular");
  }
  if (e.values(n - 1) >= 0.0 || e.values(n) <= 0.0) {
    throw Error(ErrorCode::NumericalBreakdown, "spectrum of iM is not symmetric about zero");
  }

  AntisymCanonical out;
  out.omega = -e.values.head(n);
  out.signs = RealVector::Ones(n);
  out.rotation.resize(2 * n, 2 * n);
  // U = [eta, conj(eta)] and R = U Delta, whose columns are sqrt(2) Re eta_k
  // and sqrt(2) Im eta_k.
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXcd eta = e.vectors.col(k);
    out.rotation.col(k) = std::numbers::sqrt2 * eta.real();
    out.rotation.col(n + k) = std::numbers::sqrt2 * eta.imag();
  }
  if (out.rotation.determinant() < 0.0) {
    out.rotation.col(n - 1).swap(out.rotation.col(2 * n - 1));
    out.signs(n - 1) = -1.0;
  }
  return out;
}

template void detail::require_square_finite<double>(const Matrix<double>&, std::string_view);
template void detail::require_square_finite<Complex>(const Matrix<Complex>&, std::string_view);
template double detail::hermitian_defect<double>(const Matrix<double>&);
template double detail::hermitian_defect<Complex>(const Matrix<Complex>&);
template EigenDecomposition<double> eig_hermitian<double>(const Matrix<double>&, const Tolerances&);
template EigenDecomposition<Complex> eig_hermitian<Complex>(const Matrix<Complex>&, const Tolerances&);
template SpdReport check_spd<double>(const Matrix<double>&, const Tolerances&);
template SpdReport check_spd<Complex>(const Matrix<Complex>&, const Tolerances&);
template class SpdMatrix<double>;
template class SpdMatrix<Complex>;
template SpdMatrix<double> spd_power<double>(const SpdMatrix<double>&, double);
template SpdMatrix<Complex> spd_power<Complex>(const SpdMatrix<Complex>&, double);

}  // namespace canon
