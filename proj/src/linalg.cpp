#include "cayley/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cayley/errors.hpp"
#include "cayley/rng.hpp"

namespace cayley {
namespace {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Vec<Scalar> random_start(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream) {
  NormalSampler normal(Philox4x32(seed, streams::kNormStart + stream));
  Vec<Scalar> v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if constexpr (std::is_same_v<Scalar, double>) {
      v(i) = normal();
    } else {
      v(i) = normal.complex();
    }
  }
  return v;
}

double real_part(double x) { return x; }
double real_part(Complex x) { return x.real(); }

// One restarted-Lanczos run on A*A from `start`.
template <typename Scalar>
NormResult<Scalar> lanczos_run(const LinearOperator<Scalar>& op, const NormOptions& options,
                               Vec<Scalar> start) {
  const Eigen::Index dim = op.dim;
  NormResult<Scalar> result;
  if (dim == 0) return result;

  Vec<Scalar> tmp(dim), w(dim);
  auto apply_gram = [&](const Vec<Scalar>& x, Vec<Scalar>& y) {
    op.apply(x, tmp);
    op.apply_adjoint(tmp, y);
    result.matvecs += 2;
  };

  double start_norm = start.norm();
  if (!(start_norm > 0.0) || !std::isfinite(start_norm)) {
    start = random_start<Scalar>(dim, options.start_seed ^ 0xa5a5, 7);
    start_norm = start.norm();
  }
  Vec<Scalar> v = start / start_norm;

  const Eigen::Index m = std::min<Eigen::Index>(std::max(options.krylov_dim, 2), dim);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis(dim, m);
  std::vector<double> alpha, beta;

  while (true) {
    alpha.clear();
    beta.clear();
    basis.col(0) = v;
    Eigen::Index k = 0;
    bool invariant = false;
    double scale = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      apply_gram(basis.col(j), w);
      const double a = real_part(basis.col(j).dot(w));
      alpha.push_back(a);
      scale = std::max(scale, std::abs(a));
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass) {
        const auto q = basis.leftCols(j + 1);
        w -= q * (q.adjoint() * w);
      }
      k = j + 1;
      const double b = w.norm();
      if (b <= 1e-13 * std::max(scale, 1e-300)) {
        invariant = true;
        break;
      }
      if (j + 1 == m) {
        beta.push_back(b);
        break;
      }
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
    const double theta = std::max(eig.eigenvalues()(k - 1), 0.0);
    const Eigen::VectorXd y = eig.eigenvectors().col(k - 1);
    const double residual = invariant || k == dim ? 0.0 : std::abs(beta[k - 1] * y(k - 1));

    v = basis.leftCols(k) * y.template cast<Scalar>();
    v.normalize();
    result.right_vector = v;
    result.norm = std::sqrt(theta);
    result.residual = theta > 0.0 ? residual / theta : 0.0;

    if (theta <= 0.0 || residual <= options.tolerance * theta) return result;
    if (result.matvecs >= options.matvec_cap) {
      throw ConvergenceError("spectral norm did not converge within " +
                                 std::to_string(options.matvec_cap) +
                                 " matvecs (relative residual " + std::to_string(result.residual) + ")",
                             result.residual);
    }
  }
}

}  // namespace

template <typename Scalar>
NormResult<Scalar> spectral_norm_detailed(const LinearOperator<Scalar>& op, const NormOptions& options,
                                          const std::optional<Vec<Scalar>>& warm_start) {
  Vec<Scalar> first =
      warm_start && warm_start->size() == op.dim ? *warm_start
                                                 : random_start<Scalar>(op.dim, options.start_seed, 0);
  NormResult<Scalar> best = lanczos_run(op, options, std::move(first));
  if (options.random_restart && op.dim > 1) {
    NormResult<Scalar> other = lanczos_run(op, options, random_start<Scalar>(op.dim, options.start_seed, 1));
    const int total = best.matvecs + other.matvecs;
    if (other.norm > best.norm) best = std::move(other);
    best.matvecs = total;
  }
  return best;
}

template NormResult<double> spectral_norm_detailed(const LinearOperator<double>&, const NormOptions&,
                                                   const std::optional<Vec<double>>&);
template NormResult<Complex> spectral_norm_detailed(const LinearOperator<Complex>&, const NormOptions&,
                                                    const std::optional<Vec<Complex>>&);

double spectral_norm(const RealMatrix& a, double tol) {
  NormOptions options;
  options.tolerance = tol;
  return spectral_norm_detailed(as_operator(a), options).norm;
}

double spectral_norm(const ComplexMatrix& a, double tol) {
  NormOptions options;
  options.tolerance = tol;
  return spectral_norm_detailed(as_operator(a), options).norm;
}

double spectral_norm_dense(const RealMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::BDCSVD<RealMatrix>(a).singularValues()(0);
}

double spectral_norm_dense(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues()(0);
}

namespace {
template <typename M>
M dilate_impl(const M& a) {
  const Eigen::Index r = a.rows(), c = a.cols();
  M out = M::Zero(r + c, r + c);
  out.topRightCorner(c, r) = a.adjoint();
  out.bottomLeftCorner(r, c) = a;
  return out;
}
}  // namespace

RealMatrix dilate(const RealMatrix& a) { return dilate_impl(a); }
ComplexMatrix dilate(const ComplexMatrix& a) { return dilate_impl(a); }

}  // namespace cayley
