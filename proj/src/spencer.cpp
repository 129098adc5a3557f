#include "cayley/spencer.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "cayley/errors.hpp"
#include "cayley/format.hpp"
#include "cayley/rng.hpp"
#include "cayley/sampler.hpp"

namespace cayley {
namespace {

constexpr double kImprovement = 1e-9;
constexpr double kSearchTolerance = 1e-12;
constexpr std::uint64_t kRestartInitOffset = 1ULL << 32;

std::vector<double> as_doubles(const Signs& signs) { return {signs.begin(), signs.end()}; }

NormResult<double> search_norm(const FiniteGroup& group, const Signs& signs,
                               const std::optional<RealVector>& warm = std::nullopt) {
  NormOptions options;
  options.tolerance = kSearchTolerance;
  return spectral_norm_detailed(cayley_operator<double>(group, as_doubles(signs)), options, warm);
}

Signs random_signs(int n, std::uint64_t seed, std::uint64_t stream) {
  Philox4x32 engine(seed, streams::kSearch + stream);
  Signs signs(n);
  for (auto& s : signs) s = (engine() >> 31) ? 1 : -1;
  return signs;
}

Coloring make_coloring(const FiniteGroup& group, ColoringMethod method, std::uint64_t seed, Signs signs,
                       double norm) {
  canonicalize(group, signs);
  Coloring c;
  c.group = group.name();
  c.method = method;
  c.seed = seed;
  c.signs = std::move(signs);
  c.norm = norm;
  c.discrepancy_ratio = norm / std::sqrt(static_cast<double>(group.order()));
  return c;
}

template <typename Fn>
void for_each_index(int count, bool parallel, Fn&& body) {
  std::exception_ptr failure;
  int failed = count;
  std::mutex mutex;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(mutex);
      if (i < failed) {
        failed = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string to_string(ColoringMethod method) {
  switch (method) {
    case ColoringMethod::brute_force: return "brute_force";
    case ColoringMethod::random_best_of_k: return "random_best_of_k";
    case ColoringMethod::local_search: return "local_search";
    case ColoringMethod::abelian_reduction: return "abelian_reduction";
  }
  return "unknown";
}

ColoringMethod parse_coloring_method(std::string_view text) {
  if (text == "brute" || text == "brute_force") return ColoringMethod::brute_force;
  if (text == "random" || text == "random_best_of_k") return ColoringMethod::random_best_of_k;
  if (text == "local" || text == "local_search") return ColoringMethod::local_search;
  if (text == "abelian" || text == "abelian_reduction") return ColoringMethod::abelian_reduction;
  throw ValidationError("unknown coloring method '" + std::string(text) + "'");
}

double coloring_norm(const FiniteGroup& group, const Signs& signs) {
  const auto coeffs = as_doubles(signs);
  return spectral_norm_dense(cayley_matrix<double>(group, coeffs));
}

void canonicalize(const FiniteGroup& group, Signs& signs) {
  if (signs.at(group.identity()) < 0) {
    for (auto& s : signs) s = static_cast<std::int8_t>(-s);
  }
}

void verify_coloring(const FiniteGroup& group, const Coloring& coloring) {
  if (static_cast<int>(coloring.signs.size()) != group.order()) throw std::logic_error("sign vector has wrong length");
  int sum = 0;
  for (auto s : coloring.signs) {
    if (s != 1 && s != -1) throw std::logic_error("sign outside {-1, +1}");
    sum += s;
  }
  const double reference = coloring_norm(group, coloring.signs);
  if (std::abs(reference - coloring.norm) > 1e-6 * std::max(reference, 1.0)) {
    throw std::logic_error("coloring norm " + format_double(coloring.norm) + " disagrees with recomputed " +
                           format_double(reference));
  }
  if (coloring.norm < std::abs(sum) * (1.0 - 1e-9)) {
    throw std::logic_error("coloring norm below |sum of signs|");
  }
}

Coloring brute_force(const FiniteGroup& group) {
  const int n = group.order();
  if (n > kBruteForceOrderCap) {
    throw ValidationError("brute_force: order " + std::to_string(n) + " exceeds cap " +
                          std::to_string(kBruteForceOrderCap));
  }
  // Free coordinates are every element except the identity, which stays +1.
  std::vector<int> free;
  for (int g = 0; g < n; ++g) {
    if (g != group.identity()) free.push_back(g);
  }
  const std::uint32_t patterns = 1u << free.size();
  Signs best_signs;
  double best = std::numeric_limits<double>::infinity();
  Signs signs(n, 1);
  std::vector<double> coeffs(n);
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    for (std::size_t i = 0; i < free.size(); ++i) signs[free[i]] = (mask >> i) & 1u ? -1 : 1;
    for (int g = 0; g < n; ++g) coeffs[g] = signs[g];
    const RealMatrix a = cayley_matrix<double>(group, coeffs);
    const RealMatrix gram = a.transpose() * a;
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(gram, Eigen::EigenvaluesOnly);
    const double norm = std::sqrt(std::max(eig.eigenvalues()(n - 1), 0.0));
    if (norm < best - 1e-12) {
      best = norm;
      best_signs = signs;
    }
  }
  return make_coloring(group, ColoringMethod::brute_force, 0, std::move(best_signs), best);
}

Coloring random_best_of_k(const FiniteGroup& group, int k, std::uint64_t seed, bool parallel) {
  if (k < 1) throw ValidationError("random_best_of_k needs k >= 1");
  const int n = group.order();
  std::vector<double> norms(k);
  for_each_index(k, parallel, [&](int i) { norms[i] = search_norm(group, random_signs(n, seed, i)).norm; });

  int best = 0;
  for (int i = 1; i < k; ++i) {
    if (norms[i] < norms[best]) best = i;
  }
  Coloring out = make_coloring(group, ColoringMethod::random_best_of_k, seed, random_signs(n, seed, best), norms[best]);
  const auto [mean, se] = mean_and_std_error(norms);
  out.random_mean = mean;
  out.random_std = k > 1 ? se * std::sqrt(static_cast<double>(k)) : 0.0;
  return out;
}

Coloring local_search(const FiniteGroup& group, const Coloring& init, std::uint64_t seed) {
  const int n = group.order();
  if (static_cast<int>(init.signs.size()) != n) throw ValidationError("initial coloring has wrong length");
  Signs signs = init.signs;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Philox4x32 engine(seed, streams::kSearch + (kRestartInitOffset << 1));
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(engine.uniform() * (i + 1));
    std::swap(order[i], order[std::min(j, i)]);
  }

  NormResult<double> current = search_norm(group, signs);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int g : order) {
      signs[g] = static_cast<std::int8_t>(-signs[g]);
      NormResult<double> trial = search_norm(group, signs, current.right_vector);
      if (trial.norm < current.norm - kImprovement) {
        current = std::move(trial);
        improved = true;
      } else {
        signs[g] = static_cast<std::int8_t>(-signs[g]);
      }
    }
  }
  return make_coloring(group, ColoringMethod::local_search, seed, std::move(signs), current.norm);
}

Coloring local_search_restarts(const FiniteGroup& group, int restarts, std::uint64_t seed, bool parallel) {
  if (restarts < 1) throw ValidationError("local search needs at least one restart");
  const int n = group.order();
  std::vector<Coloring> results(restarts);
  for_each_index(restarts, parallel, [&](int r) {
    Signs start = random_signs(n, seed, kRestartInitOffset + static_cast<std::uint64_t>(r));
    const double start_norm = search_norm(group, start).norm;
    Coloring init = make_coloring(group, ColoringMethod::local_search, seed, std::move(start), start_norm);
    results[r] = local_search(group, init, derive_seed(seed, static_cast<std::uint64_t>(r)));
  });
  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    if (results[r].norm < results[best].norm) best = r;
  }
  Coloring out = std::move(results[best]);
  out.seed = seed;
  return out;
}

AbelianCharacters abelian_characters(const FiniteGroup& group) {
  if (!group.is_abelian()) throw ValidationError("abelian_reduction: " + group.name() + " is not abelian");
  const int n = group.order();
  const int exponent = group_exponent(group);

  // Greedy generating set; every element is reached from the identity by
  // multiplying generators, recorded as (parent, generator) pairs.
  std::vector<Element> gens;
  std::vector<int> parent(n, -1), via(n, -1);
  std::vector<Element> reached{group.identity()};
  std::vector<bool> in(n, false);
  in[group.identity()] = true;
  auto grow = [&] {
    for (std::size_t head = 0; head < reached.size(); ++head) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const Element next = group.multiply(gens[s], reached[head]);
        if (!in[next]) {
          in[next] = true;
          parent[next] = reached[head];
          via[next] = static_cast<int>(s);
          reached.push_back(next);
        }
      }
    }
  };
  std::vector<int> gen_order;
  while (static_cast<int>(reached.size()) < n) {
    Element pick = -1;
    int pick_order = 0;
    for (int g = 0; g < n; ++g) {
      if (in[g]) continue;
      int order = 1;
      for (Element x = g; x != group.identity(); x = group.multiply(x, g)) ++order;
      if (order > pick_order) {
        pick_order = order;
        pick = g;
      }
    }
    gens.push_back(pick);
    gen_order.push_back(pick_order);
    // Restart the closure so elements discovered via the new generator get
    // parent links; earlier links stay valid.
    grow();
  }

  // Enumerate candidate generator images and keep consistent ones.
  AbelianCharacters out;
  out.exponent = exponent;
  std::vector<int> choice(gens.size(), 0);
  std::vector<int> values(n);
  while (true) {
    values[group.identity()] = 0;
    for (std::size_t i = 1; i < reached.size(); ++i) {
      const Element e = reached[i];
      const int s = via[e];
      values[e] = (values[parent[e]] + choice[s] * (exponent / gen_order[s])) % exponent;
    }
    bool homomorphism = true;
    for (int x = 0; x < n && homomorphism; ++x) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const int expected = (values[x] + choice[s] * (exponent / gen_order[s])) % exponent;
        if (values[group.multiply(gens[s], x)] != expected) {
          homomorphism = false;
          break;
        }
      }
    }
    if (homomorphism) out.table.push_back(values);

    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == gen_order[pos]) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }
  if (static_cast<int>(out.table.size()) != n) {
    throw std::logic_error("found " + std::to_string(out.table.size()) + " characters for abelian group of order " +
                           std::to_string(n));
  }
  return out;
}

namespace {

std::vector<std::complex<double>> roots_of_unity(int exponent) {
  std::vector<std::complex<double>> roots(exponent);
  for (int k = 0; k < exponent; ++k) roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / exponent);
  return roots;
}

// z_chi = sum_g signs[g] chi(g), for every chi.
std::vector<std::complex<double>> character_sums(const AbelianCharacters& chars,
                                                 const std::vector<std::complex<double>>& roots,
                                                 const Signs& signs) {
  std::vector<std::complex<double>> z(chars.table.size());
  for (std::size_t c = 0; c < chars.table.size(); ++c) {
    std::complex<double> acc{};
    for (std::size_t g = 0; g < signs.size(); ++g) acc += static_cast<double>(signs[g]) * roots[chars.table[c][g]];
    z[c] = acc;
  }
  return z;
}

double split_linf(const std::vector<std::complex<double>>& z) {
  double m = 0.0;
  for (const auto& v : z) m = std::max({m, std::abs(v.real()), std::abs(v.imag())});
  return m;
}

double complex_linf(const std::vector<std::complex<double>>& z) {
  double m = 0.0;
  for (const auto& v : z) m = std::max(m, std::abs(v));
  return m;
}

// Single-flip first-improvement descent on objective(z), updating z in place.
template <typename Objective>
void descend(const AbelianCharacters& chars, const std::vector<std::complex<double>>& roots,
             const std::vector<int>& order, Signs& signs, std::vector<std::complex<double>>& z,
             Objective objective) {
  double current = objective(z);
  std::vector<std::complex<double>> trial(z.size());
  bool improved = true;
  while (improved) {
    improved = false;
    for (int g : order) {
      const double delta = -2.0 * signs[g];
      for (std::size_t c = 0; c < z.size(); ++c) trial[c] = z[c] + delta * roots[chars.table[c][g]];
      const double value = objective(trial);
      if (value < current - kImprovement) {
        signs[g] = static_cast<std::int8_t>(-signs[g]);
        z.swap(trial);
        current = value;
        improved = true;
      }
    }
  }
}

}  // namespace

double character_linf(const AbelianCharacters& chars, const Signs& signs) {
  return complex_linf(character_sums(chars, roots_of_unity(chars.exponent), signs));
}

Coloring abelian_reduction(const FiniteGroup& group, std::uint64_t seed, int starts) {
  if (starts < 1) throw ValidationError("abelian_reduction needs at least one start");
  const AbelianCharacters chars = abelian_characters(group);
  const auto roots = roots_of_unity(chars.exponent);
  const int n = group.order();

  Signs best_signs;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < starts; ++r) {
    Signs signs = random_signs(n, seed, 2 * kRestartInitOffset + static_cast<std::uint64_t>(r));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Philox4x32 engine(derive_seed(seed, static_cast<std::uint64_t>(r)), streams::kSearch);
    for (int i = n - 1; i > 0; --i) {
      const int j = std::min(static_cast<int>(engine.uniform() * (i + 1)), i);
      std::swap(order[i], order[j]);
    }
    auto z = character_sums(chars, roots, signs);
    // Descend on the split real/imaginary objective, then polish on the
    // modulus, which is the spectral norm itself.
    descend(chars, roots, order, signs, z, split_linf);
    descend(chars, roots, order, signs, z, complex_linf);
    const double value = complex_linf(z);
    if (value < best - kImprovement) {
      best = value;
      best_signs = signs;
    }
  }
  Coloring out = make_coloring(group, ColoringMethod::abelian_reduction, seed, std::move(best_signs), best);
  const double reference = coloring_norm(group, out.signs);
  if (std::abs(reference - out.norm) > 1e-6 * std::max(reference, 1.0)) {
    throw std::logic_error("character l-infinity value " + format_double(out.norm) +
                           " differs from spectral norm " + format_double(reference));
  }
  return out;
}

nlohmann::json to_json(const Coloring& coloring) {
  std::vector<int> signs(coloring.signs.begin(), coloring.signs.end());
  nlohmann::json doc = {{"group", coloring.group},
                        {"method", to_string(coloring.method)},
                        {"seed", coloring.seed},
                        {"norm", coloring.norm},
                        {"ratio", coloring.discrepancy_ratio},
                        {"signs", signs}};
  if (coloring.random_mean) doc["random_mean"] = *coloring.random_mean;
  if (coloring.random_std) doc["random_std"] = *coloring.random_std;
  return doc;
}

}  // namespace cayley
