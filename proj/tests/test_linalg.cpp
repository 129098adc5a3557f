#include <doctest.h>

#include <random>

#include "cayley/errors.hpp"
#include "cayley/linalg.hpp"

using namespace cayley;

namespace {

RealMatrix random_real(int rows, int cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  RealMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(gen);
  return m;
}

ComplexMatrix random_complex(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(gen), dist(gen));
  return m;
}

}  // namespace

TEST_CASE("spectral norm of simple matrices") {
  CHECK(spectral_norm(RealMatrix(RealMatrix::Identity(1, 1))) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(spectral_norm(RealMatrix(RealMatrix::Identity(7, 7))) == doctest::Approx(1.0).epsilon(1e-6));
  RealMatrix diag = RealMatrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = -2.0;
  CHECK(spectral_norm(diag) == doctest::Approx(2.0).epsilon(1e-6));
  for (int n : {1, 2, 5, 33}) {
    CHECK(spectral_norm(RealMatrix(RealMatrix::Ones(n, n))) == doctest::Approx(n).epsilon(1e-6));
  }
  CHECK(spectral_norm(RealMatrix(RealMatrix::Zero(4, 4))) == 0.0);
}

TEST_CASE("dilation") {
  RealMatrix a(1, 1);
  a(0, 0) = 3.0;
  const RealMatrix d = dilate(a);
  CHECK(d.rows() == 2);
  CHECK(d(0, 0) == 0.0);
  CHECK(d(0, 1) == 3.0);
  CHECK(d(1, 0) == 3.0);
  CHECK(d(1, 1) == 0.0);

  RealMatrix b(2, 2);
  b << 1, 2, 3, 4;
  const RealMatrix db = dilate(b);
  RealMatrix expected = RealMatrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = b.transpose();
  expected.block(2, 0, 2, 2) = b;
  CHECK(db == expected);

  for (unsigned seed = 0; seed < 5; ++seed) {
    const RealMatrix r = random_real(5, 5, seed);
    CHECK(std::abs(spectral_norm_dense(dilate(r)) - spectral_norm_dense(r)) < 1e-10);
    const ComplexMatrix c = random_complex(5, seed);
    const ComplexMatrix dc = dilate(c);
    CHECK(dc.isApprox(dc.adjoint()));
    CHECK(std::abs(spectral_norm_dense(dc) - spectral_norm_dense(c)) < 1e-10);
  }
}

TEST_CASE("iterative norm agrees with dense SVD and is transpose invariant") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const int n = 3 + static_cast<int>(seed) * 7;
    const RealMatrix a = random_real(n, n, seed);
    const double exact = spectral_norm_dense(a);
    CHECK(std::abs(spectral_norm(a) - exact) <= 1e-6 * exact);
    CHECK(std::abs(spectral_norm(RealMatrix(a.transpose())) - exact) <= 1e-6 * exact);
    CHECK(std::abs(spectral_norm(dilate(a)) - exact) <= 1e-6 * exact);
    const ComplexMatrix c = random_complex(n, seed + 100);
    const double exact_c = spectral_norm_dense(c);
    CHECK(std::abs(spectral_norm(c) - exact_c) <= 1e-6 * exact_c);
    CHECK(std::abs(spectral_norm(ComplexMatrix(c.adjoint())) - exact_c) <= 1e-6 * exact_c);
  }
}

TEST_CASE("clustered top singular values") {
  // Two nearly tied singular values slow plain power iteration; the
  // estimate must still reach the larger one.
  RealMatrix d = RealMatrix::Zero(60, 60);
  for (int i = 0; i < 60; ++i) d(i, i) = 1.0 + 0.001 * i;
  const RealMatrix q = random_real(60, 60, 3).householderQr().householderQ();
  const RealMatrix a = q * d * q.transpose();
  CHECK(std::abs(spectral_norm(a) - 1.059) <= 1e-6 * 1.059);
}

TEST_CASE("non-convergence is reported, not swallowed") {
  const RealMatrix a = random_real(80, 80, 11);
  NormOptions options;
  options.tolerance = 1e-14;
  options.matvec_cap = 6;
  options.krylov_dim = 3;
  const auto op = as_operator(a);
  try {
    spectral_norm_detailed(op, options);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("detailed result carries a singular vector") {
  const RealMatrix a = random_real(20, 20, 4);
  const auto op = as_operator(a);
  const auto result = spectral_norm_detailed(op);
  CHECK(result.right_vector.norm() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((a * result.right_vector).norm() == doctest::Approx(result.norm).epsilon(1e-5));
  CHECK(result.matvecs > 0);
}
