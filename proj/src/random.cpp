#include "canon/random.hpp"

#include <numbers>

namespace canon {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

template <Field F>
Matrix<F> random_unitary(Eigen::Index n, Rng& rng) {
  const Matrix<F> z = rng.gaussian_matrix<F>(n, n);
  Eigen::HouseholderQR<Matrix<F>> qr(z);
  Matrix<F> q = qr.householderQ() * Matrix<F>::Identity(n, n);
  const Matrix<F> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  // Rescale columns by the phase of diag(R) so the distribution is Haar.
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

template <Field F>
Matrix<F> random_special_unitary(Eigen::Index n, Rng& rng) {
  Matrix<F> q = random_unitary<F>(n, rng);
  if (n == 0) return q;
  const F det = q.determinant();
  if constexpr (is_complex_v<F>) {
    q.col(0) *= std::conj(det) / std::abs(det);
  } else {
    if (det < 0.0) q.col(0) *= -1.0;
  }
  return q;
}

template <Field F>
Matrix<F> random_spd(Eigen::Index n, double cond, Rng& rng) {
  const Matrix<F> q = random_unitary<F>(n, rng);
  RealVector lambda(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    lambda(k) = std::pow(cond, t);
  }
  Matrix<F> v = q * lambda.cast<F>().asDiagonal() * q.adjoint();
  return (0.5 * (v + v.adjoint())).eval();
}

template <Field F>
Matrix<F> random_hermitian(Eigen::Index n, Rng& rng) {
  const Matrix<F> z = rng.gaussian_matrix<F>(n, n);
  return (0.5 * (z + z.adjoint())).eval();
}

RealMatrix random_antisymmetric(Eigen::Index n, Rng& rng) {
  const RealMatrix z = rng.gaussian_matrix<double>(n, n);
  return (0.5 * (z - z.transpose())).eval();
}

template Matrix<double> random_unitary<double>(Eigen::Index, Rng&);
template Matrix<Complex> random_unitary<Complex>(Eigen::Index, Rng&);
template Matrix<double> random_special_unitary<double>(Eigen::Index, Rng&);
template Matrix<Complex> random_special_unitary<Complex>(Eigen::Index, Rng&);
template Matrix<double> random_spd<double>(Eigen::Index, double, Rng&);
template Matrix<Complex> random_spd<Complex>(Eigen::Index, double, Rng&);
template Matrix<double> random_hermitian<double>(Eigen::Index, Rng&);
template Matrix<Complex> random_hermitian<Complex>(Eigen::Index, Rng&);

}  // namespace canon
