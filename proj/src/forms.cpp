#include "canon/forms.hpp"

namespace canon {

MetricG::MetricG(Eigen::Index m, Eigen::Index n) : m_(m), n_(n) {
  if (m < 0 || n < 0) throw Error(ErrorCode::InvalidArgument, "signature counts must be non-negative");
  if (m + n == 0) throw Error(ErrorCode::ZeroDimension, "metric needs m + n >= 1");
}

RealVector MetricG::diagonal() const {
  RealVector d(dim());
  d.head(m_).setOnes();
  d.tail(n_).setConstant(-1.0);
  return d;
}

RealMatrix MetricG::matrix() const { return diagonal().asDiagonal(); }

SymplecticBeta::SymplecticBeta(Eigen::Index n) : n_(n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "mode count must be non-negative");
  if (n == 0) throw Error(ErrorCode::ZeroDimension, "symplectic form needs n >= 1");
}

RealMatrix SymplecticBeta::matrix() const {
  RealMatrix b = RealMatrix::Zero(dim(), dim());
  b.topRightCorner(n_, n_).setIdentity();
  b.bottomLeftCorner(n_, n_) = -RealMatrix::Identity(n_, n_);
  return b;
}

Eigen::Index form_dim(const QuadraticForm& form) {
  return std::visit([](const auto& f) { return f.dim(); }, form);
}

RealMatrix form_matrix(const QuadraticForm& form) {
  return std::visit([](const auto& f) { return f.matrix(); }, form);
}

std::string describe(const QuadraticForm& form) {
  if (const auto* g = std::get_if<MetricG>(&form)) {
    return "metric(" + std::to_string(g->m()) + "," + std::to_string(g->n()) + ")";
  }
  return "symplectic(" + std::to_string(std::get<SymplecticBeta>(form).n()) + ")";
}

namespace {

template <Field F>
void require_matching(const Matrix<F>& m, const QuadraticForm& form) {
  if (m.rows() != m.cols() || m.rows() != form_dim(form)) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " but form " + describe(form) + " has dimension " + std::to_string(form_dim(form)));
  }
}

}  // namespace

template <Field F>
EvenOddSplit<F> even_odd_split(const Matrix<F>& m, const QuadraticForm& form) {
  require_matching(m, form);
  const Matrix<F> j = form_matrix(form).cast<F>();
  const Matrix<F> mirrored = j * m * j.transpose();
  return {(0.5 * (m + mirrored)).eval(), (0.5 * (m - mirrored)).eval()};
}

template <Field F>
double invariant_trace(const Matrix<F>& m, const QuadraticForm& form, int l) {
  require_matching(m, form);
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "power must be a positive integer");
  if (std::holds_alternative<SymplecticBeta>(form) && l % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "symplectic invariants are the even powers only");
  }
  const Matrix<F> jm = form_matrix(form).cast<F>() * m;
  Matrix<F> power = jm;
  for (int k = 1; k < l; ++k) power = (power * jm).eval();
  const F tr = power.trace();
  if constexpr (is_complex_v<F>) {
    const double scale = std::pow(m.norm(), l);
    if (std::abs(tr.imag()) > 1e-10 * std::max(scale, 1.0)) {
      throw Error(ErrorCode::NumericalBreakdown, "invariant trace has a non-negligible imaginary part");
    }
    return tr.real();
  } else {
    return tr;
  }
}

template <Field F>
double quartic_form(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "quartic_form needs a square matrix");
  return m.diagonal().cwiseAbs2().sum();
}

template <Field F>
double odd_norm(const Matrix<F>& m, const QuadraticForm& form) {
  return even_odd_split(m, form).odd.squaredNorm();
}

template EvenOddSplit<double> even_odd_split<double>(const Matrix<double>&, const QuadraticForm&);
template EvenOddSplit<Complex> even_odd_split<Complex>(const Matrix<Complex>&, const QuadraticForm&);
template double invariant_trace<double>(const Matrix<double>&, const QuadraticForm&, int);
template double invariant_trace<Complex>(const Matrix<Complex>&, const QuadraticForm&, int);
template double quartic_form<double>(const Matrix<double>&);
template double quartic_form<Complex>(const Matrix<Complex>&);
template double odd_norm<double>(const Matrix<double>&, const QuadraticForm&);
template double odd_norm<Complex>(const Matrix<Complex>&, const QuadraticForm&);

}  // namespace canon
