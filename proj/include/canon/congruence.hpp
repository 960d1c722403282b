#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canon/forms.hpp"
#include "canon/linalg_core.hpp"

namespace canon {

enum class GroupKind { Orthogonal, Pseudo, Symplectic };

/// Which group a congruence transformation belongs to.
struct GroupTag {
  GroupKind kind = GroupKind::Orthogonal;
  Eigen::Index m = 0;  // Orthogonal: N; Pseudo: positive count; Symplectic: modes
  Eigen::Index n = 0;  // Pseudo: negative count

  /// The form preserved by the group; SO(N) preserves metric(N, 0) = I.
  QuadraticForm form() const;
  std::string name() const;
};

/// S^dagger V S = diag(d_squared) with S in the tagged group.
template <Field F>
struct CongruenceResult {
  Matrix<F> transform;
  RealVector d_squared;
  GroupTag group;
  double form_residual = 0.0;  // max |S^dagger J S - J|
  double diag_residual = 0.0;  // max |S^dagger V S - diag(d_squared)| / max|V|
  std::vector<std::string> warnings;

  RealVector d() const { return d_squared.cwiseSqrt(); }
};

/// Williamson form: d_squared = (kappa, kappa).
template <Field F>
struct WilliamsonResult {
  CongruenceResult<F> congruence;
  RealVector kappa;  // descending
};

/// Unitary/orthogonal diagonalization; d_squared are the eigenvalues of V,
/// ascending.
template <Field F>
CongruenceResult<F> orthogonal_congruence(const SpdMatrix<F>& v);

/// S in SO(m,n) (real) or SU(m,n) (complex) with S^dagger g S = g and
/// S^dagger V S diagonal.
///
/// S = V^{-1/2} R D where R diagonalizes V^{-1/2} g V^{-1/2}. The columns of
/// R hold the m positive eigenvalues first (descending), then the n negative
/// ones (descending magnitude); D = |lambda|^{-1/2}, so d_squared = 1/|lambda|,
/// i.e. the moduli of the eigenvalues of gV.
template <Field F>
CongruenceResult<F> pseudo_congruence(const SpdMatrix<F>& v, Eigen::Index m, Eigen::Index n);

/// Symplectic diagonalization S^dagger V S = diag(kappa, kappa) with
/// S^dagger beta S = beta.
///
/// Real V goes through antisym_canonical(V^{-1/2} beta V^{-1/2}) and yields
/// S in Sp(2n, R). For complex hermitian V the same construction with
/// adjoints is used; it exists only when the spectrum of V^{-1} beta comes in
/// +/- pairs, otherwise Error{UnpairedSpectrum} is thrown.
template <Field F>
WilliamsonResult<F> williamson(const SpdMatrix<F>& v);

template <Field F>
struct GroupReport {
  double form_residual = 0.0;
  F det{};
  bool pass = false;
};

/// Membership test: max |S^dagger J S - J| <= tol and |det S - 1| <= tol.
template <Field F>
GroupReport<F> group_check(const Matrix<F>& s, const QuadraticForm& form, double tol);

enum class SampleKind { Compact, Noncompact, General };

/// Identity with [[cosh mu, sinh mu], [sinh mu, cosh mu]] in the (i, j)
/// plane; an element of SO(m,n) when i < m <= j.
RealMatrix boost(const MetricG& g, Eigen::Index i, Eigen::Index j, double mu);

/// diag(..., e^t at k, ..., e^-t at n+k, ...), an element of Sp(2n, R).
RealMatrix squeeze(const SymplecticBeta& beta, Eigen::Index k, double t);

/// [[X, Y], [-Y, X]] for X + iY unitary, the U(n) inside Sp(2n, R).
RealMatrix unitary_to_symplectic(const ComplexMatrix& u);

/// Random element of the group preserving `form`.
///
/// Compact draws from the maximal compact subgroup (SO(m) x SO(n) for the
/// metric, U(n) for beta; the complex field uses the unitary analogues).
/// Noncompact is a single boost or squeeze in a random plane with parameter
/// uniform in [-mu_max, mu_max]. General is compact * boosts * compact.
template <Field F>
Matrix<F> sample_group_element(const QuadraticForm& form, SampleKind kind, std::uint64_t seed,
                               double mu_max = 2.0);

}  // namespace canon
