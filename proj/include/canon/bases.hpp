#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canon/congruence.hpp"

namespace canon {

/// N vectors of dimension N, stored as the columns of a square matrix.
template <Field F>
class VectorSet {
 public:
  /// Throws NotSquare / NonFinite. Linear independence is checked by gram().
  static VectorSet make(Matrix<F> columns);

  const Matrix<F>& vectors() const noexcept { return vectors_; }
  Eigen::Index dim() const noexcept { return vectors_.rows(); }

 private:
  explicit VectorSet(Matrix<F> v) : vectors_(std::move(v)) {}
  Matrix<F> vectors_;
};

/// G_ij = (v_i, v_j) = v_i^dagger v_j. Throws DependentVectors when G is not
/// positive definite.
template <Field F>
SpdMatrix<F> gram(const VectorSet<F>& vs, const Tolerances& tol = {});

/// The operator sum_j v_j v_j^dagger in the coordinate basis.
template <Field F>
SpdMatrix<F> operator_matrix(const VectorSet<F>& vs, const Tolerances& tol = {});

/// M(z) = Z^dagger (sum_j v_j v_j^dagger) Z.
template <Field F>
Matrix<F> m_of_basis(const VectorSet<F>& vs, const Matrix<F>& z);

enum class BasisKind { GramSchmidt, SchweinlerWigner, Lorentz, Symplectic };

std::string to_string(BasisKind kind);

struct BasisDiagnostics {
  double quartic_value = 0.0;  // sum_k M(z)_kk^2
  double odd_norm = 0.0;       // tr((M(z)^odd)^2); zero for orthonormal kinds
  RealVector m_diagonal;
  double residual = 0.0;       // form residual of Z for its kind
  double diag_residual = 0.0;  // max off-diagonal of M(z) / max|M(z)|
  bool degenerate = false;     // Schweinler-Wigner only: Gram spectrum has a near-tie
};

template <Field F>
struct BasisResult {
  Matrix<F> basis;      // Z, columns z_1 ... z_N
  Matrix<F> transform;  // S with Z = V S
  Matrix<F> m_of_z;
  BasisKind kind = BasisKind::GramSchmidt;
  Eigen::Index m = 0;  // Lorentz: signature; Symplectic: m = modes
  Eigen::Index n = 0;
  BasisDiagnostics diagnostics;
};

/// The form a basis of this kind is normalized against; metric(N, 0) is the
/// identity used for orthonormal kinds.
template <Field F>
QuadraticForm basis_form(const BasisResult<F>& basis);

/// Order-dependent orthonormalization; S is upper triangular.
template <Field F>
BasisResult<F> gram_schmidt(const VectorSet<F>& vs, const Tolerances& tol = {});

/// Z = V U0 P^{-1/2} with U0^dagger G U0 = P (ascending).
template <Field F>
BasisResult<F> schweinler_wigner(const VectorSet<F>& vs, const Tolerances& tol = {});

/// Z^dagger g Z = g with M(z) diagonal; Z from pseudo_congruence(M-hat).
template <Field F>
BasisResult<F> lorentz_basis(const VectorSet<F>& vs, Eigen::Index m, Eigen::Index n,
                             const Tolerances& tol = {});

/// Z^dagger beta Z = beta with M(z) = diag(kappa, kappa); Z from williamson(M-hat).
template <Field F>
BasisResult<F> symplectic_basis(const VectorSet<F>& vs, const Tolerances& tol = {});

struct AuditReport {
  std::uint64_t seed = 0;
  double tolerance = 1e-8;  // relative
  double baseline_quartic = 0.0;
  std::vector<double> perturbed_quartics;   // compact-subgroup perturbations
  double odd_norm_baseline = 0.0;
  std::vector<double> odd_norms_perturbed;  // general group perturbations
  double invariant_baseline = 0.0;          // tr((J M)^2), or tr(M^2) for orthonormal kinds
  double invariant_drift = 0.0;             // max |change| / tr(M^2)
  std::vector<double> growth_parameters;
  std::vector<double> growth_curve;         // quartic along a one-parameter boost/squeeze

  bool quartic_maximal = false;
  bool odd_minimal = false;
  bool invariant_stable = false;
  bool growth_monotone = false;

  bool pass() const { return quartic_maximal && odd_minimal && invariant_stable && growth_monotone; }
};

/// Falsification harness for the extremum properties of `basis`.
///
/// Trial t draws its compact and general perturbations from seeds derived from
/// (seed, t) only, so the report does not depend on evaluation order.
/// Throws KindMismatch when `basis` is not a valid basis of its kind for `vs`.
template <Field F>
AuditReport extremum_audit(const VectorSet<F>& vs, const BasisResult<F>& basis, int trials, std::uint64_t seed,
                           double tolerance = 1e-8);

enum class Family { SO11, SP2 };

/// Closed form of sum_k M_kk^2 for M = diag(a, b) after congruence by the
/// SO(1,1) boost with rapidity mu (SO11) or by diag(mu, 1/mu) (SP2).
///
///   SO11: a^2 + b^2 + 2 (a + b)^2 sinh^2(mu) cosh^2(mu)
///   SP2:  mu^4 a^2 + b^2 / mu^4
double unboundedness_formula(double a, double b, double mu, Family family);

/// The same quantity computed by forming S^T diag(a, b) S explicitly.
double unboundedness_by_congruence(double a, double b, double mu, Family family);

/// Closed form, cross-checked against the explicit congruence (relative
/// 1e-10). Throws InvalidArgument for a, b <= 0 and ZeroParameter for SP2
/// with mu == 0.
double unboundedness_demo(double a, double b, double mu, Family family);

}  // namespace canon
