#include <doctest.h>

#include <cmath>
#include <random>

#include "cayley/errors.hpp"
#include "cayley/spencer.hpp"
#include "oracles/brute.hpp"

using namespace cayley;

namespace {

Signs random_signs(int n, std::mt19937& gen) {
  Signs s(n);
  for (auto& x : s) x = (gen() & 1u) ? 1 : -1;
  return s;
}

}  // namespace

TEST_CASE("brute force literal optima") {
  CHECK(brute_force(make_group("trivial")).norm == doctest::Approx(1.0));
  CHECK(brute_force(make_group("cyclic:2")).norm == doctest::Approx(2.0));
  CHECK(brute_force(make_group("cyclic:4")).norm == doctest::Approx(2.0));
  CHECK_THROWS_AS(brute_force(make_group("cyclic:17")), ValidationError);
}

TEST_CASE("brute force matches the circulant oracle") {
  for (int n = 1; n <= 12; ++n) {
    CAPTURE(n);
    const auto result = brute_force(make_group(Cyclic{n}));
    CHECK(result.norm == doctest::Approx(oracle::brute_min_circulant(n)).epsilon(1e-9));
    CHECK(result.signs.front() == 1);
    CHECK_NOTHROW(verify_coloring(make_group(Cyclic{n}), result));
    std::vector<int> signs(result.signs.begin(), result.signs.end());
    CHECK(oracle::circulant_sign_norm(signs) == doctest::Approx(result.norm).epsilon(1e-9));
  }
}

TEST_CASE("norm is invariant under global negation") {
  std::mt19937 gen(2);
  for (const char* spec : {"sym:3", "alt:5", "cyclic:10"}) {
    const auto g = make_group(spec);
    for (int t = 0; t < 5; ++t) {
      Signs s = random_signs(g.order(), gen);
      Signs neg = s;
      for (auto& x : neg) x = static_cast<std::int8_t>(-x);
      CHECK(coloring_norm(g, s) == doctest::Approx(coloring_norm(g, neg)).epsilon(1e-12));
      canonicalize(g, neg);
      CHECK(neg[g.identity()] == 1);
    }
  }
}

TEST_CASE("random best of k") {
  const auto g = make_group("cyclic:16");
  const auto one = random_best_of_k(g, 1, 5);
  CHECK(one.norm == doctest::Approx(random_best_of_k(g, 1, 5).norm));
  const auto best = random_best_of_k(g, 200, 5);
  REQUIRE(best.random_mean.has_value());
  REQUIRE(best.random_std.has_value());
  CHECK(best.norm <= *best.random_mean - *best.random_std);
  CHECK_NOTHROW(verify_coloring(g, best));
  const auto serial = random_best_of_k(g, 200, 5, false);
  CHECK(serial.signs == best.signs);
  CHECK(serial.norm == best.norm);
  CHECK(*serial.random_mean == *best.random_mean);

  const auto a5 = make_group("alt:5");
  const auto r5 = random_best_of_k(a5, 200, 9);
  CHECK(r5.norm <= *r5.random_mean);
  CHECK_THROWS_AS(random_best_of_k(g, 0, 1), ValidationError);
}

TEST_CASE("local search is stable at an optimum and never worsens") {
  for (const char* spec : {"cyclic:8", "dihedral:4", "sym:3"}) {
    CAPTURE(spec);
    const auto g = make_group(spec);
    const auto opt = brute_force(g);
    const auto polished = local_search(g, opt, 3);
    CHECK(polished.norm == doctest::Approx(opt.norm).epsilon(1e-9));
  }
  const auto g = make_group("alt:5");
  const auto start = random_best_of_k(g, 1, 17);
  const auto result = local_search(g, start, 17);
  CHECK(result.norm <= start.norm + 1e-9);
  CHECK_NOTHROW(verify_coloring(g, result));
}

TEST_CASE("local search with restarts is near-optimal on small groups") {
  for (const char* spec : {"cyclic:6", "cyclic:9", "cyclic:12", "cyclic:16", "dihedral:4", "dihedral:6", "sym:3",
                           "alt:4", "abelian:2x2x2", "abelian:2x4", "abelian:2x2x2x2"}) {
    CAPTURE(spec);
    const auto g = make_group(spec);
    const double opt = brute_force(g).norm;
    const auto found = local_search_restarts(g, 20, 1);
    CHECK(found.norm <= 1.10 * opt + 1e-9);
    CHECK(found.norm >= opt - 1e-9);
  }
}

TEST_CASE("restart results are schedule independent") {
  const auto g = make_group("alt:5");
  const auto a = local_search_restarts(g, 4, 8, true);
  const auto b = local_search_restarts(g, 4, 8, false);
  CHECK(a.signs == b.signs);
  CHECK(a.norm == b.norm);
}

TEST_CASE("abelian characters diagonalize the sign matrix") {
  std::mt19937 gen(4);
  for (const char* spec : {"cyclic:2", "cyclic:8", "cyclic:15", "abelian:2x2x2", "abelian:2x6", "abelian:3x3"}) {
    CAPTURE(spec);
    const auto g = make_group(spec);
    const auto chars = abelian_characters(g);
    CHECK(chars.table.size() == static_cast<std::size_t>(g.order()));
    for (int t = 0; t < 20; ++t) {
      const Signs s = random_signs(g.order(), gen);
      const double dense = coloring_norm(g, s);
      CHECK(std::abs(character_linf(chars, s) - dense) <= 1e-9 * std::max(dense, 1.0));
    }
  }
  CHECK_THROWS_AS(abelian_characters(make_group("sym:3")), ValidationError);
}

TEST_CASE("abelian reduction") {
  const auto c2 = make_group("cyclic:2");
  CHECK(abelian_reduction(c2, 1).norm == doctest::Approx(brute_force(c2).norm));
  for (const char* spec : {"cyclic:8", "cyclic:16", "abelian:2x2x2x2"}) {
    CAPTURE(spec);
    const auto g = make_group(spec);
    const auto found = abelian_reduction(g, 3);
    CHECK_NOTHROW(verify_coloring(g, found));
    CHECK(found.discrepancy_ratio <= 3.0);
    CHECK(found.norm <= 1.10 * brute_force(g).norm + 1e-9);
  }
  const auto big = make_group("cyclic:64");
  const auto found = abelian_reduction(big, 3);
  CHECK(found.discrepancy_ratio <= 3.0);
  CHECK_THROWS_AS(abelian_reduction(make_group("alt:4"), 1), ValidationError);
}

TEST_CASE("verification rejects a tampered coloring") {
  const auto g = make_group("cyclic:8");
  auto c = brute_force(g);
  c.norm *= 0.5;
  CHECK_THROWS_AS(verify_coloring(g, c), std::logic_error);
  auto d = brute_force(g);
  d.signs[1] = 0;
  CHECK_THROWS_AS(verify_coloring(g, d), std::logic_error);
}

TEST_CASE("coloring JSON") {
  const auto g = make_group("cyclic:4");
  const auto doc = to_json(random_best_of_k(g, 10, 2));
  CHECK(doc.at("group") == "cyclic:4");
  CHECK(doc.at("method") == "random_best_of_k");
  CHECK(doc.at("signs").size() == 4);
  CHECK(doc.contains("random_mean"));
  CHECK_FALSE(to_json(brute_force(g)).contains("random_mean"));
  CHECK(parse_coloring_method("local") == ColoringMethod::local_search);
  CHECK_THROWS_AS(parse_coloring_method("annealing"), ValidationError);
}
