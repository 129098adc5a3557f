#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/group.hpp"
#include "cayley/linalg.hpp"

namespace cayley {

inline constexpr int kBruteForceOrderCap = 16;

enum class ColoringMethod { brute_force, random_best_of_k, local_search, abelian_reduction };

std::string to_string(ColoringMethod method);
ColoringMethod parse_coloring_method(std::string_view text);

using Signs = std::vector<std::int8_t>;

struct Coloring {
  std::string group;
  ColoringMethod method = ColoringMethod::brute_force;
  std::uint64_t seed = 0;
  Signs signs;  // canonical: +1 at the identity
  double norm = 0.0;
  double discrepancy_ratio = 0.0;  // norm / sqrt(n)
  // Random draws only: mean and sample standard deviation of all k norms.
  std::optional<double> random_mean;
  std::optional<double> random_std;
};

/// ||sum_g signs[g] rho(g)|| from a dense SVD.
double coloring_norm(const FiniteGroup& group, const Signs& signs);

/// Flips every sign when the identity carries -1; the norm is unchanged.
void canonicalize(const FiniteGroup& group, Signs& signs);

/// Throws std::logic_error unless the coloring's norm matches an
/// independent recomputation within 1e-6 relative and is at least |sum of
/// signs| (the all-ones vector is an eigenvector with that eigenvalue).
void verify_coloring(const FiniteGroup& group, const Coloring& coloring);

/// Exact minimizer over the 2^{n-1} canonical patterns; n <= 16.
Coloring brute_force(const FiniteGroup& group);

/// Best of k uniform sign vectors; draw i uses stream (seed, i).
Coloring random_best_of_k(const FiniteGroup& group, int k, std::uint64_t seed, bool parallel = true);

/// First-improvement single-flip descent in a seeded random scan order,
/// until no flip lowers the norm by more than 1e-9.
Coloring local_search(const FiniteGroup& group, const Coloring& init, std::uint64_t seed);

/// Independent local searches from uniform random starts. The result is the
/// smallest norm, ties going to the lowest restart index.
Coloring local_search_restarts(const FiniteGroup& group, int restarts, std::uint64_t seed,
                               bool parallel = true);

/// Characters of an abelian group as exponents: chi_c(g) = exp(2 pi i
/// table[c][g] / exponent). Throws ValidationError for non-abelian groups.
struct AbelianCharacters {
  int exponent = 1;
  std::vector<std::vector<int>> table;  // table[chi][g]
};
AbelianCharacters abelian_characters(const FiniteGroup& group);

/// max_chi |sum_g signs[g] chi(g)|.
double character_linf(const AbelianCharacters& chars, const Signs& signs);

/// Sign search on the split real/imaginary l-infinity objective over the
/// character vectors a_g = (chi(g))_chi, with `starts` random starts.
Coloring abelian_reduction(const FiniteGroup& group, std::uint64_t seed, int starts = 20);

nlohmann::json to_json(const Coloring& coloring);

}  // namespace cayley
