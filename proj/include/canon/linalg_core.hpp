#pragma once

#include <limits>

#include "canon/matrix.hpp"

namespace canon {

/// Eigenpairs of a hermitian matrix: values ascending, vectors as orthonormal
/// columns.
///
/// Each column is scaled so that its largest-magnitude entry is real and
/// positive. Inside a (numerically) degenerate eigenspace the columns are the
/// pivoted Gram-Schmidt orthonormalization of the projected standard basis, so
/// a diagonal input comes back with standard basis vectors in index order.
template <Field F>
struct EigenDecomposition {
  RealVector values;
  Matrix<F> vectors;
};

template <Field F>
EigenDecomposition<F> eig_hermitian(const Matrix<F>& a, const Tolerances& tol = {});

enum class SpdReason {
  Ok,
  NotSquare,
  NonFinite,
  NotHermitian,
  NegativeEigenvalue,
  BelowThreshold,  // 0 < lambda_min <= pd * lambda_max
};

constexpr std::string_view to_string(SpdReason reason) {
  switch (reason) {
    case SpdReason::Ok: return "Ok";
    case SpdReason::NotSquare: return "NotSquare";
    case SpdReason::NonFinite: return "NonFinite";
    case SpdReason::NotHermitian: return "NotHermitian";
    case SpdReason::NegativeEigenvalue: return "NegativeEigenvalue";
    case SpdReason::BelowThreshold: return "BelowThreshold";
  }
  return "Unknown";
}

struct SpdReport {
  bool ok = false;
  SpdReason reason = SpdReason::NotSquare;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;

  double condition() const {
    return min_eigenvalue > 0.0 ? max_eigenvalue / min_eigenvalue
                                : std::numeric_limits<double>::infinity();
  }
};

/// Never throws; the reason code says why a matrix was rejected.
template <Field F>
SpdReport check_spd(const Matrix<F>& a, const Tolerances& tol = {});

/// A hermitian positive definite matrix, validated on construction.
///
/// The stored matrix is the exact hermitian part of the input; the
/// eigendecomposition computed during validation is kept for reuse.
template <Field F>
class SpdMatrix {
 public:
  /// Throws Error{NotPositiveDefinite | NotHermitian | NonFinite | NotSquare}.
  static SpdMatrix make(const Matrix<F>& a, const Tolerances& tol = {});

  const Matrix<F>& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const EigenDecomposition<F>& eigen() const noexcept { return eigen_; }
  double condition() const noexcept { return eigen_.values(dim() - 1) / eigen_.values(0); }
  const Tolerances& tolerances() const noexcept { return tol_; }

 private:
  SpdMatrix(Matrix<F> m, EigenDecomposition<F> e, Tolerances tol)
      : matrix_(std::move(m)), eigen_(std::move(e)), tol_(tol) {}

  Matrix<F> matrix_;
  EigenDecomposition<F> eigen_;
  Tolerances tol_;
};

/// V^p computed through the eigendecomposition of V.
template <Field F>
SpdMatrix<F> spd_power(const SpdMatrix<F>& v, double p);

/// Real orthogonal R with R^T M R = [[0, Omega], [-Omega, 0]].
///
/// `omega` is positive and sorted descending. `signs` is +1 for every pair
/// unless the orientation of M forces det R = -1 for the all-positive block
/// form; in that case the columns of the last pair are swapped (so det R = +1)
/// and its sign is -1, i.e. R^T M R = [[0, S Omega], [-S Omega, 0]] with
/// S = diag(signs).
struct AntisymCanonical {
  RealMatrix rotation;
  RealVector omega;
  RealVector signs;

  Eigen::Index pairs() const { return omega.size(); }
  RealMatrix block_form() const;
};

AntisymCanonical antisym_canonical(const RealMatrix& m, const Tolerances& tol = {});

namespace detail {

template <Field F>
void require_square_finite(const Matrix<F>& a, std::string_view what);

template <Field F>
double hermitian_defect(const Matrix<F>& a);

}  // namespace detail

}  // namespace canon
