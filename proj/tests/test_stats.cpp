#include <doctest.h>

#include <random>
#include <vector>

#include "cayley/stats.hpp"

using namespace cayley;

TEST_CASE("kolmogorov survival reference values") {
  CHECK(kolmogorov_survival(0.0) == doctest::Approx(1.0));
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(1e-2));
  CHECK(kolmogorov_survival(0.8276) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(kolmogorov_survival(5.0) < 1e-10);
}

TEST_CASE("identical samples give D = 0") {
  std::vector<double> a = {1, 2, 3, 4, 5};
  const auto r = ks_two_sample(a, a);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == doctest::Approx(1.0));
}

TEST_CASE("disjoint samples give D = 1") {
  std::vector<double> a = {1, 2, 3}, b = {4, 5, 6, 7};
  CHECK(ks_two_sample(a, b).statistic == 1.0);
}

TEST_CASE("same law accepted, shifted law rejected") {
  std::mt19937 gen(3);
  std::normal_distribution<double> dist;
  std::vector<double> a(2000), b(2000), c(2000);
  for (auto& x : a) x = dist(gen);
  for (auto& x : b) x = dist(gen);
  for (auto& x : c) x = dist(gen) + 0.3;
  CHECK(ks_two_sample(a, b).p_value > 0.01);
  CHECK(ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("statistic is symmetric and handles ties") {
  std::vector<double> a = {0, 0, 1, 1, 2}, b = {0, 1, 1, 3};
  CHECK(ks_two_sample(a, b).statistic == doctest::Approx(ks_two_sample(b, a).statistic));
  // F_a(0)=0.4, F_b(0)=0.25; F_a(1)=0.8, F_b(1)=0.75; F_a(2)=1, F_b(2)=0.75.
  CHECK(ks_two_sample(a, b).statistic == doctest::Approx(0.25));
}
