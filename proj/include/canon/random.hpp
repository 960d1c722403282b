#pragma once

#include <cstdint>
#include <random>

#include "canon/matrix.hpp"

namespace canon {

/// Seeded source of uniform and Gaussian deviates.
///
/// Built on std::mt19937_64, whose output sequence is fixed by the standard;
/// the conversions to double are done here rather than through the
/// implementation-defined std distributions so that a seed reproduces the
/// same numbers on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t index(std::uint64_t count) { return engine_() % count; }

  double normal();

  template <Field F>
  F gaussian() {
    if constexpr (is_complex_v<F>) {
      return Complex(normal(), normal()) / std::sqrt(2.0);
    } else {
      return normal();
    }
  }

  template <Field F>
  Matrix<F> gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix<F> out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = gaussian<F>();
    return out;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed orthogonal (real) or unitary (complex) matrix.
template <Field F>
Matrix<F> random_unitary(Eigen::Index n, Rng& rng);

/// Same as random_unitary but with determinant exactly +1 up to rounding.
template <Field F>
Matrix<F> random_special_unitary(Eigen::Index n, Rng& rng);

/// Q diag(lambda) Q^dagger with Haar Q and lambda log-spaced over [1, cond].
template <Field F>
Matrix<F> random_spd(Eigen::Index n, double cond, Rng& rng);

/// Random hermitian (symmetric) matrix with Gaussian entries.
template <Field F>
Matrix<F> random_hermitian(Eigen::Index n, Rng& rng);

/// Random real antisymmetric matrix with Gaussian entries.
RealMatrix random_antisymmetric(Eigen::Index n, Rng& rng);

}  // namespace canon
