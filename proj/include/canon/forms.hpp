#pragma once

#include <variant>

#include "canon/matrix.hpp"

namespace canon {

/// Indefinite metric g = diag(+1 x m, -1 x n).
class MetricG {
 public:
  /// Throws Error{ZeroDimension} when m + n == 0.
  MetricG(Eigen::Index m, Eigen::Index n);

  Eigen::Index m() const noexcept { return m_; }
  Eigen::Index n() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return m_ + n_; }
  RealMatrix matrix() const;
  RealVector diagonal() const;

 private:
  Eigen::Index m_;
  Eigen::Index n_;
};

/// Standard symplectic form beta = [[0, I], [-I, 0]] on R^{2n}.
class SymplecticBeta {
 public:
  /// Throws Error{ZeroDimension} when n == 0.
  explicit SymplecticBeta(Eigen::Index n);

  Eigen::Index n() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return 2 * n_; }
  RealMatrix matrix() const;

 private:
  Eigen::Index n_;
};

using QuadraticForm = std::variant<MetricG, SymplecticBeta>;

inline MetricG metric(Eigen::Index m, Eigen::Index n) { return MetricG(m, n); }

Eigen::Index form_dim(const QuadraticForm& form);
RealMatrix form_matrix(const QuadraticForm& form);
std::string describe(const QuadraticForm& form);

template <Field F>
struct EvenOddSplit {
  Matrix<F> even;
  Matrix<F> odd;
};

/// even = (M + J M J^T) / 2, odd = (M - J M J^T) / 2 for the form's matrix J.
template <Field F>
EvenOddSplit<F> even_odd_split(const Matrix<F>& m, const QuadraticForm& form);

/// tr((J M)^l). For the symplectic form only even l is accepted (odd powers
/// vanish for real symmetric M). Throws NumericalBreakdown if the trace has an
/// imaginary part beyond rounding.
template <Field F>
double invariant_trace(const Matrix<F>& m, const QuadraticForm& form, int l);

/// Sum of squared diagonal entries.
template <Field F>
double quartic_form(const Matrix<F>& m);

/// tr((M^odd)^2), the squared Frobenius norm of the odd part.
template <Field F>
double odd_norm(const Matrix<F>& m, const QuadraticForm& form);

}  // namespace canon
