#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>

#include <Eigen/Dense>

namespace cayley {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultNormTolerance = 1e-6;
inline constexpr int kDefaultNormMatvecCap = 10000;

struct NormOptions {
  double tolerance = kDefaultNormTolerance;  // relative, on the singular value
  int matvec_cap = kDefaultNormMatvecCap;    // per start vector, counting A and A* applications
  int krylov_dim = 40;
  std::uint64_t start_seed = 0x6e6f726d;     // fixed start; the restart uses a second stream
  bool random_restart = true;
};

template <typename Scalar>
struct NormResult {
  double norm = 0.0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> right_vector;  // unit top right singular vector
  int matvecs = 0;
  double residual = 0.0;  // relative residual of the top Ritz pair of A*A
};

/// A square matrix given only through its action and its adjoint's action.
template <typename Scalar>
struct LinearOperator {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Eigen::Index dim = 0;
  std::function<void(const Vector&, Vector&)> apply;
  std::function<void(const Vector&, Vector&)> apply_adjoint;
};

template <typename Derived>
LinearOperator<typename Derived::Scalar> as_operator(const Eigen::MatrixBase<Derived>& matrix) {
  using Scalar = typename Derived::Scalar;
  using Vector = typename LinearOperator<Scalar>::Vector;
  // The operator keeps a reference; callers own the matrix.
  const auto& m = matrix.derived();
  return {m.rows(), [&m](const Vector& x, Vector& y) { y.noalias() = m * x; },
          [&m](const Vector& x, Vector& y) { y.noalias() = m.adjoint() * x; }};
}

/// Largest singular value by restarted Lanczos on A*A.
///
/// Runs from a fixed-seed start vector and, unless disabled, once more from
/// an independent random start; reports the larger value. Throws
/// ConvergenceError if either run exhausts `matvec_cap` before its Ritz
/// residual drops below the tolerance.
template <typename Scalar>
NormResult<Scalar> spectral_norm_detailed(
    const LinearOperator<Scalar>& op, const NormOptions& options = {},
    const std::optional<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& warm_start = std::nullopt);

double spectral_norm(const RealMatrix& a, double tol = kDefaultNormTolerance);
double spectral_norm(const ComplexMatrix& a, double tol = kDefaultNormTolerance);

/// Exact reference: largest singular value from a dense SVD.
double spectral_norm_dense(const RealMatrix& a);
double spectral_norm_dense(const ComplexMatrix& a);

/// [[0, A*], [A, 0]]; Hermitian with the same spectral norm as A.
RealMatrix dilate(const RealMatrix& a);
ComplexMatrix dilate(const ComplexMatrix& a);

}  // namespace cayley
