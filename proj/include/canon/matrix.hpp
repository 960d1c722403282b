#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace canon {

using Complex = std::complex<double>;

/// Scalar fields the toolkit operates over.
template <typename F>
concept Field = std::same_as<F, double> || std::same_as<F, Complex>;

template <Field F>
using Matrix = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;

template <Field F>
using Vector = Eigen::Matrix<F, Eigen::Dynamic, 1>;

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;
using RealVector = Eigen::VectorXd;

template <Field F>
inline constexpr bool is_complex_v = std::same_as<F, Complex>;

template <Field F>
constexpr std::string_view field_name() {
  return is_complex_v<F> ? "complex" : "real";
}

enum class ErrorCode {
  NonFinite,
  NotSquare,
  NotHermitian,
  NotPositiveDefinite,
  NotAntisymmetric,
  Singular,
  OddDimension,
  ZeroDimension,
  DimensionMismatch,
  SignatureMismatch,
  UnpairedSpectrum,
  DependentVectors,
  FieldMismatch,
  KindMismatch,
  ZeroParameter,
  InvalidArgument,
  ParseError,
  ShapeError,
  NumericalBreakdown,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::ZeroDimension: return "ZeroDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::UnpairedSpectrum: return "UnpairedSpectrum";
    case ErrorCode::DependentVectors: return "DependentVectors";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
  }
  return "Unknown";
}

/// Exception carrying a stable error code; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical thresholds shared by all modules.
///
/// `symmetry` is relative to the max-abs entry of the matrix under test,
/// `eig_per_dim` is multiplied by the dimension N to give the relative
/// reconstruction tolerance, `pd` is the smallest admissible ratio
/// lambda_min / lambda_max for a positive definite matrix.
struct Tolerances {
  double symmetry = 1e-10;
  double eig_per_dim = 1e-9;
  double pd = 1e-12;

  double eig(Eigen::Index n) const { return eig_per_dim * static_cast<double>(n); }
};

inline constexpr double kIllConditionedThreshold = 1e12;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

/// Largest off-diagonal magnitude.
template <typename Derived>
double max_off_diagonal(const Eigen::MatrixBase<Derived>& a) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) worst = std::max(worst, std::abs(a(i, j)));
    }
  }
  return worst;
}

}  // namespace canon
