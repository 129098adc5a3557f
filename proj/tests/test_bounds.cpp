#include <doctest.h>

#include <cmath>

#include "cayley/bounds.hpp"
#include "cayley/errors.hpp"
#include "oracles/brute.hpp"

using namespace cayley;

namespace {

IrrepSpectrum spectrum_of(const FiniteGroup& g) { return irrep_degrees(RegularRep(g), 0); }

// Covariance of an explicit family computed entry by entry, for comparison.
double covariance_norm_reference(const std::vector<ComplexMatrix>& family) {
  const Eigen::Index d = family.front().rows();
  ComplexMatrix cov = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& a : family)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k)
          for (Eigen::Index l = 0; l < d; ++l) cov(i * d + j, k * d + l) += a(i, j) * std::conj(a(k, l));
  return std::sqrt(spectral_norm_dense(cov));
}

}  // namespace

TEST_CASE("sigma") {
  for (const char* spec : {"trivial", "cyclic:5", "sym:4", "alt:5"}) {
    const auto g = make_group(spec);
    CHECK(sigma_of(GaussianSeries::real_cayley(g)) == std::sqrt(static_cast<double>(g.order())));
  }
  // Generic path on the explicit copy of a Cayley family.
  for (const char* spec : {"cyclic:6", "sym:3", "dihedral:4"}) {
    const auto g = make_group(spec);
    CHECK(sigma_of(cayley_as_explicit(g)) == doctest::Approx(std::sqrt(g.order())).epsilon(1e-10));
  }
  // Diagonal units: sum of squares is the identity.
  std::vector<ComplexMatrix> units;
  for (int i = 0; i < 4; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(4, 4);
    e(i, i) = 1.0;
    units.push_back(e);
  }
  CHECK(sigma_of(GaussianSeries::explicit_family(units)) == doctest::Approx(1.0).epsilon(1e-10));
  // Orthonormal symmetric basis: sum A^2 = (d + 1) / 2 I.
  const int d = 4;
  std::vector<ComplexMatrix> goe;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
      }
      goe.push_back(e);
    }
  CHECK(sigma_of(GaussianSeries::explicit_family(goe)) == doctest::Approx(std::sqrt((d + 1) / 2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(sigma_of(GaussianSeries::explicit_family({ComplexMatrix::Identity(300, 300)})), ValidationError);
}

TEST_CASE("v: analytic Cayley value matches the generic covariance") {
  for (int n = 2; n <= 16; ++n) {
    CAPTURE(n);
    const auto g = make_group(Cyclic{n});
    const double analytic = v_of(GaussianSeries::real_cayley(g));
    CHECK(analytic == std::sqrt(2.0 * n));
    CHECK(std::abs(v_of(cayley_as_explicit(g)) - analytic) <= 1e-8 * analytic);
  }
  const auto s3 = make_group("sym:3");
  CHECK(v_of(cayley_as_explicit(s3)) == doctest::Approx(std::sqrt(12.0)).epsilon(1e-10));
}

TEST_CASE("v: explicit families") {
  for (int d : {1, 2, 3, 5}) {
    const auto series = GaussianSeries::explicit_family({ComplexMatrix::Identity(d, d)});
    CHECK(v_of(series) == doctest::Approx(std::sqrt(d)).epsilon(1e-10));
    CHECK(v_of(series) == doctest::Approx(covariance_norm_reference(series.coefficients)).epsilon(1e-10));
    const auto dilated = GaussianSeries::explicit_family({ComplexMatrix::Identity(d, d)}, Dilation::always);
    CHECK(v_of(dilated) == doctest::Approx(std::sqrt(2.0 * d)).epsilon(1e-10));
  }
  // A complex non-Hermitian pair; automatic dilation applies.
  ComplexMatrix a(2, 2), b(2, 2);
  a << Complex(1, 1), 2, 0, Complex(0, -1);
  b << 0, Complex(0, 3), 1, 1;
  const auto series = GaussianSeries::explicit_family({a, b});
  const double expected =
      covariance_norm_reference({dilate(a), dilate(b)});
  CHECK(v_of(series) == doctest::Approx(expected).epsilon(1e-10));
  const auto undilated = GaussianSeries::explicit_family({a, b}, Dilation::never);
  CHECK(v_of(undilated) == doctest::Approx(covariance_norm_reference({a, b})).epsilon(1e-10));
  CHECK_THROWS_AS(v_of(GaussianSeries::explicit_family({ComplexMatrix::Identity(40, 40)}, Dilation::always)),
                  ValidationError);
}

TEST_CASE("m(G) values") {
  const auto trivial = m_of_group(IrrepSpectrum{"cyclic:1", {1}});
  CHECK(std::abs(trivial.value - 1.0) < 1e-6);
  CHECK(trivial.s_star < 1e-3);

  const auto c16 = m_of_group(IrrepSpectrum{"cyclic:16", std::vector<int>(16, 1)});
  const auto [c16_grid, c16_arg] = oracle::grid_min_m(std::vector<int>(16, 1), 1000000);
  CHECK(std::abs(c16.value - c16_grid) < 1e-2);
  CHECK(c16.value == doctest::Approx(3.1147).epsilon(1e-3));
  CHECK(c16.value <= c16_grid + 1e-9);
  CHECK(c16.s_star == doctest::Approx(c16_arg).epsilon(1e-3));

  const std::vector<int> a5 = {1, 3, 3, 4, 5};
  const auto m5 = m_of_group(IrrepSpectrum{"alt:5", a5});
  CHECK(std::abs(m5.value - oracle::grid_min_m(a5, 1000000).first) < 1e-2);
  CHECK(m5.value == doctest::Approx(1.8441).epsilon(1e-3));
  CHECK(m_objective(a5, m5.s_star) == doctest::Approx(m5.value));
}

TEST_CASE("m(G) picks the global minimum of a two-well objective") {
  // Three linear characters plus many large blocks: local minima near
  // s = 0.18 (f = 3.14) and s = 1.85 (f = 2.39). Descent from 0 stalls in the first.
  std::vector<int> degrees(3, 1);
  for (int i = 0; i < 100; ++i) degrees.push_back(400);
  const auto m = m_of_group(IrrepSpectrum{"synthetic", degrees});
  const auto [grid, arg] = oracle::grid_min_m(degrees, 1000000);
  CHECK(m.value <= grid + 1e-9);
  CHECK(m.value == doctest::Approx(grid).epsilon(1e-6));
  CHECK(m.s_star == doctest::Approx(arg).epsilon(1e-3));
  CHECK(m.s_star > 1.5);
}

TEST_CASE("m(G) stays within its proven window") {
  for (const char* spec : {"trivial", "cyclic:2", "cyclic:64", "abelian:2x2x2x2", "dihedral:7", "sym:4", "sym:5",
                           "alt:5", "alt:6", "psl2:7", "psl2:11"}) {
    CAPTURE(spec);
    const auto g = make_group(spec);
    const auto m = m_of_group(spectrum_of(g));
    const double n = g.order();
    CHECK(m.value >= std::exp(-0.5));
    CHECK(m.value <= std::sqrt(2.0 * std::log(n)) + 1.0);
    CHECK(m.value <= m_objective(spectrum_of(g).degrees, 0.0) + 1e-12);
  }
}

TEST_CASE("w certificate and S norm") {
  for (const char* spec : {"trivial", "cyclic:2", "cyclic:3", "cyclic:8", "abelian:2x2x2", "dihedral:4", "sym:3",
                           "sym:4", "alt:4", "alt:5", "psl2:7"}) {
    CAPTURE(spec);
    const auto g = make_group(spec);
    const double n = g.order();
    const auto w = w_certificate(RegularRep(g));
    CHECK(std::abs(w.s_norm - n) <= 1e-8 * n);
    CHECK(std::abs(w.value - std::sqrt(n)) <= 1e-8 * std::sqrt(n));
    CHECK(w.value <= sigma_of(GaussianSeries::real_cayley(g)) * (1 + 1e-8));
  }
}

TEST_CASE("small-degree counts") {
  const IrrepSpectrum a5{"alt:5", {1, 3, 3, 4, 5}};
  // ln 60 = 4.094: thresholds 1.02, 2.05, 4.09.
  const auto counts = small_degree_counts(a5, 60);
  REQUIRE(counts.size() == 3);
  CHECK(counts[0].count == 1);
  CHECK(counts[1].count == 1);
  CHECK(counts[2].count == 4);
}

TEST_CASE("bounds report") {
  const auto g = make_group("cyclic:16");
  const auto report = bounds_report(g, spectrum_of(g));
  CHECK(report.n == 16);
  CHECK(report.sigma == 4.0);
  CHECK(report.v == doctest::Approx(std::sqrt(32.0)));
  CHECK(report.w_certificate == doctest::Approx(4.0));
  CHECK(report.nck_upper == doctest::Approx(4.0 * std::sqrt(std::log(32.0))));
  CHECK(report.m_of_g == doctest::Approx(3.1147).epsilon(1e-3));
  CHECK(csv_header_bounds() == "group,n,sigma,v,w_cert,m,s_star");
  CHECK(to_csv_row(report).rfind("cyclic:16,16,4,", 0) == 0);
  const auto doc = to_json(report);
  CHECK(doc.at("sigma") == 4.0);
  CHECK(doc.at("small_degree_counts").size() == 3);
  CHECK_THROWS_AS(bounds_report(g, IrrepSpectrum{"cyclic:16", {1, 1}}), ValidationError);
}
