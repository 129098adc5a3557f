#include "cayley/group.hpp"

#include <algorithm>
#include <cstring>
#include <charconv>
#include <numeric>
#include <random>
#include <unordered_map>

#include "cayley/errors.hpp"

namespace cayley {
namespace {

constexpr int kExhaustiveAssociativityOrder = 64;
constexpr int kAssociativitySamples = 10000;

std::string join_factors(const std::vector<int>& factors) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(factors[i]);
  }
  return out;
}

void check_cap(long long order, int cap, const std::string& what) {
  if (order > cap) {
    throw ValidationError(what + ": order " + std::to_string(order) + " exceeds cap " +
                          std::to_string(cap));
  }
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

void validate_permutation(const Permutation& perm, std::size_t degree) {
  if (perm.size() != degree) {
    throw ValidationError("generator permutations have unequal domain sizes");
  }
  std::vector<bool> seen(degree, false);
  for (int image : perm) {
    if (image < 0 || static_cast<std::size_t>(image) >= degree || seen[image]) {
      throw ValidationError("generator is not a permutation");
    }
    seen[image] = true;
  }
}

std::string perm_key(const Permutation& perm) {
  std::string key(perm.size() * sizeof(int), '\0');
  std::memcpy(key.data(), perm.data(), key.size());
  return key;
}

// (a * b)(x) = a(b(x))
Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[b[x]];
  return out;
}

FiniteGroup build_cyclic(int n, int cap) {
  if (n < 1) throw ValidationError("cyclic order must be positive");
  check_cap(n, cap, "cyclic");
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return FiniteGroup("cyclic:" + std::to_string(n), n, std::move(table));
}

FiniteGroup build_abelian(const std::vector<int>& factors, int cap) {
  if (factors.empty()) throw ValidationError("abelian group needs at least one factor");
  long long order = 1;
  for (int f : factors) {
    if (f < 2) throw ValidationError("abelian factors must be >= 2");
    order *= f;
    check_cap(order, cap, "abelian");
  }
  const int n = static_cast<int>(order);
  // Mixed radix, first factor least significant.
  std::vector<std::vector<int>> digits(n, std::vector<int>(factors.size()));
  for (int e = 0; e < n; ++e) {
    int rest = e;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      digits[e][j] = rest % factors[j];
      rest /= factors[j];
    }
  }
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int idx = 0;
      int radix = 1;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        idx += ((digits[a][j] + digits[b][j]) % factors[j]) * radix;
        radix *= factors[j];
      }
      table[static_cast<std::size_t>(a) * n + b] = idx;
    }
  }
  return FiniteGroup("abelian:" + join_factors(factors), n, std::move(table));
}

FiniteGroup build_dihedral(int m, int cap) {
  if (m < 1) throw ValidationError("dihedral parameter must be positive");
  check_cap(2LL * m, cap, "dihedral");
  const int n = 2 * m;
  // Element a + m*b stands for r^a s^b.
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    const int a = x % m, b = x / m;
    for (int y = 0; y < n; ++y) {
      const int c = y % m, d = y / m;
      const int rot = ((b == 0 ? a + c : a - c) % m + m) % m;
      table[static_cast<std::size_t>(x) * n + y] = rot + m * ((b + d) % 2);
    }
  }
  return FiniteGroup("dihedral:" + std::to_string(m), n, std::move(table));
}

long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

int lex_rank(const Permutation& perm) {
  const int k = static_cast<int>(perm.size());
  int rank = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j) smaller += perm[j] < perm[i];
    rank = rank * (k - i) + smaller;
  }
  return rank;
}

bool is_even(const Permutation& perm) {
  std::vector<bool> seen(perm.size(), false);
  int transpositions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

FiniteGroup build_permutation_family(int k, bool even_only, int cap) {
  if (k < 1) throw ValidationError("permutation degree must be positive");
  if (k > 12) throw ValidationError("permutation degree too large");
  const long long full = factorial(k);
  check_cap(even_only && k >= 2 ? full / 2 : full, cap, even_only ? "alternating" : "symmetric");

  std::vector<Permutation> elements;
  std::vector<int> index_of_rank(static_cast<std::size_t>(full), -1);
  Permutation perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  int rank = 0;
  do {
    if (!even_only || is_even(perm)) {
      index_of_rank[rank] = static_cast<int>(elements.size());
      elements.push_back(perm);
    }
    ++rank;
  } while (std::next_permutation(perm.begin(), perm.end()));

  const int n = static_cast<int>(elements.size());
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      table[static_cast<std::size_t>(a) * n + b] =
          index_of_rank[lex_rank(compose(elements[a], elements[b]))];
    }
  }
  const std::string prefix = even_only ? "alt:" : "sym:";
  return FiniteGroup(prefix + std::to_string(k), n, std::move(table));
}

FiniteGroup build_from_generators(const FromGenerators& spec, int cap) {
  if (spec.generators.empty()) throw ValidationError("no generators given");
  const std::size_t degree = spec.generators.front().size();
  if (degree == 0) throw ValidationError("generators act on an empty domain");
  for (const auto& gen : spec.generators) validate_permutation(gen, degree);

  Permutation identity(degree);
  std::iota(identity.begin(), identity.end(), 0);

  // Breadth-first closure under left multiplication by generators. Each new
  // element remembers (parent, generator) so table rows can be derived later.
  std::vector<Permutation> elements{identity};
  std::vector<std::pair<int, int>> origin{{-1, -1}};
  std::unordered_map<std::string, int> index{{perm_key(identity), 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (std::size_t s = 0; s < spec.generators.size(); ++s) {
      Permutation next = compose(spec.generators[s], elements[head]);
      auto [it, inserted] = index.emplace(perm_key(next), static_cast<int>(elements.size()));
      if (inserted) {
        elements.push_back(std::move(next));
        origin.emplace_back(static_cast<int>(head), static_cast<int>(s));
        check_cap(static_cast<long long>(elements.size()), cap, spec.name);
      }
    }
  }

  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<Element>> gen_rows(spec.generators.size(), std::vector<Element>(n));
  for (std::size_t s = 0; s < spec.generators.size(); ++s) {
    for (int h = 0; h < n; ++h) {
      gen_rows[s][h] = index.at(perm_key(compose(spec.generators[s], elements[h])));
    }
  }
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  for (int h = 0; h < n; ++h) table[h] = h;
  for (int e = 1; e < n; ++e) {
    // e = s * parent, so e*h = s * (parent*h).
    const auto [parent, s] = origin[e];
    const Element* parent_row = table.data() + static_cast<std::size_t>(parent) * n;
    Element* row = table.data() + static_cast<std::size_t>(e) * n;
    for (int h = 0; h < n; ++h) row[h] = gen_rows[s][parent_row[h]];
  }
  return FiniteGroup(spec.name, n, std::move(table));
}

FiniteGroup build_psl2(int p, int cap) {
  if (p < 3 || !is_prime(p)) throw ValidationError("psl2 needs an odd prime, got " + std::to_string(p));
  // Projective line {0..p-1, infinity=p}.
  Permutation shift(p + 1), invert(p + 1);
  for (int z = 0; z < p; ++z) shift[z] = (z + 1) % p;
  shift[p] = p;
  invert[0] = p;
  invert[p] = 0;
  for (int z = 1; z < p; ++z) {
    int inv = 1;
    while ((inv * z) % p != 1) ++inv;
    invert[z] = (p - inv) % p;
  }
  return build_from_generators({{shift, invert}, "psl2:" + std::to_string(p)}, cap);
}

int parse_int(std::string_view text, std::string_view spec) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ValidationError("cannot parse integer '" + std::string(text) + "' in group spec '" +
                          std::string(spec) + "'");
  }
  return value;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, int order, std::vector<Element> table)
    : name_(std::move(name)), order_(order), table_(std::move(table)) {
  const int n = order_;
  if (n < 1) throw ValidationError(name_ + ": order must be positive");
  if (table_.size() != static_cast<std::size_t>(n) * n) {
    throw ValidationError(name_ + ": table size does not match order");
  }
  auto at = [&](int a, int b) { return table_[static_cast<std::size_t>(a) * n + b]; };

  std::vector<int> seen(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Element v = at(a, b);
      if (v < 0 || v >= n || seen[v] == a) throw ValidationError(name_ + ": row is not a permutation");
      seen[v] = a;
    }
  }
  std::fill(seen.begin(), seen.end(), -1);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      const Element v = at(a, b);
      if (seen[v] == b) throw ValidationError(name_ + ": column is not a permutation");
      seen[v] = b;
    }
  }

  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = at(e, g) == g && at(g, e) == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw ValidationError(name_ + ": no identity element");

  inverse_.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (at(g, h) == identity_) {
        inverse_[g] = h;
        break;
      }
    }
    if (at(inverse_[g], g) != identity_) throw ValidationError(name_ + ": inverse is not two-sided");
  }

  auto associative = [&](int a, int b, int c) { return at(at(a, b), c) == at(a, at(b, c)); };
  if (n <= kExhaustiveAssociativityOrder) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (!associative(a, b, c)) throw ValidationError(name_ + ": table is not associative");
  } else {
    std::mt19937_64 rng(0x5eed'a550'c1a7ULL);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < kAssociativitySamples; ++t) {
      const int a = pick(rng), b = pick(rng), c = pick(rng);
      if (!associative(a, b, c)) throw ValidationError(name_ + ": table is not associative");
    }
  }
}

Element FiniteGroup::check(Element g) const {
  if (g < 0 || g >= order_) {
    throw std::out_of_range("element " + std::to_string(g) + " outside group of order " +
                            std::to_string(order_));
  }
  return g;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (table_[static_cast<std::size_t>(a) * order_ + b] !=
          table_[static_cast<std::size_t>(b) * order_ + a])
        return false;
  return true;
}

FiniteGroup make_group(const GroupFamily& family, int order_cap) {
  return std::visit(
      [&](const auto& f) -> FiniteGroup {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Cyclic>) return build_cyclic(f.n, order_cap);
        if constexpr (std::is_same_v<T, Abelian>) return build_abelian(f.factors, order_cap);
        if constexpr (std::is_same_v<T, Dihedral>) return build_dihedral(f.m, order_cap);
        if constexpr (std::is_same_v<T, Symmetric>) return build_permutation_family(f.k, false, order_cap);
        if constexpr (std::is_same_v<T, Alternating>) return build_permutation_family(f.k, true, order_cap);
        if constexpr (std::is_same_v<T, Psl2>) return build_psl2(f.p, order_cap);
        if constexpr (std::is_same_v<T, FromGenerators>) return build_from_generators(f, order_cap);
      },
      family);
}

GroupFamily parse_group_spec(std::string_view spec) {
  if (spec == "trivial") return Cyclic{1};
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("group spec '" + std::string(spec) + "' must look like family:param");
  }
  const std::string_view family = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);
  if (family == "cyclic") return Cyclic{parse_int(arg, spec)};
  if (family == "dihedral") return Dihedral{parse_int(arg, spec)};
  if (family == "sym") return Symmetric{parse_int(arg, spec)};
  if (family == "alt") return Alternating{parse_int(arg, spec)};
  if (family == "psl2") return Psl2{parse_int(arg, spec)};
  if (family == "abelian") {
    Abelian out;
    std::size_t start = 0;
    while (start <= arg.size()) {
      const auto x = arg.find('x', start);
      const auto piece = arg.substr(start, x == std::string_view::npos ? arg.npos : x - start);
      out.factors.push_back(parse_int(piece, spec));
      if (x == std::string_view::npos) break;
      start = x + 1;
    }
    return out;
  }
  throw ValidationError("unknown group family '" + std::string(family) + "'");
}

FiniteGroup make_group(std::string_view spec, int order_cap) {
  return make_group(parse_group_spec(spec), order_cap);
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& group) {
  const int n = group.order();
  ConjugacyClasses out;
  out.class_of.assign(n, -1);
  const auto inv = group.inverses();
  for (int g = 0; g < n; ++g) {
    if (out.class_of[g] >= 0) continue;
    const int id = static_cast<int>(out.classes.size());
    std::vector<Element> members;
    for (int h = 0; h < n; ++h) {
      const Element c = group.row(group.row(h)[g])[inv[h]];
      if (out.class_of[c] < 0) {
        out.class_of[c] = id;
        members.push_back(c);
      }
    }
    std::sort(members.begin(), members.end());
    out.classes.push_back(std::move(members));
  }
  return out;
}

std::vector<int> inverse_classes(const FiniteGroup& group, const ConjugacyClasses& classes) {
  std::vector<int> out(classes.count());
  for (std::size_t k = 0; k < classes.count(); ++k) {
    out[k] = classes.class_of[group.inverse(classes.classes[k].front())];
  }
  return out;
}

std::vector<Element> subgroup_closure(const FiniteGroup& group, std::span<const Element> generators) {
  const int n = group.order();
  std::vector<bool> member(n, false);
  std::vector<Element> elements{group.identity()};
  member[group.identity()] = true;
  std::vector<Element> gens;
  for (Element g : generators) {
    if (g != group.identity()) gens.push_back(g);
  }
  for (std::size_t head = 0; head < elements.size(); ++head) {
    const auto row = group.row(elements[head]);
    for (Element s : gens) {
      const Element next = row[s];
      if (!member[next]) {
        member[next] = true;
        elements.push_back(next);
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

int commutator_subgroup_order(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<bool> seen(n, false);
  std::vector<Element> commutators;
  const auto inv = group.inverses();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Element c = group.multiply(group.multiply(a, b), group.multiply(inv[a], inv[b]));
      if (!seen[c]) {
        seen[c] = true;
        commutators.push_back(c);
      }
    }
  }
  return static_cast<int>(subgroup_closure(group, commutators).size());
}

int abelianization_index(const FiniteGroup& group) {
  return group.order() / commutator_subgroup_order(group);
}

std::optional<std::vector<Element>> find_proper_normal_subgroup(const FiniteGroup& group,
                                                                const ConjugacyClasses& classes) {
  const int n = group.order();
  const int id_class = classes.class_of[group.identity()];
  std::vector<int> others;
  for (int k = 0; k < static_cast<int>(classes.count()); ++k) {
    if (k != id_class) others.push_back(k);
  }
  if (others.size() > 24) throw ValidationError("too many conjugacy classes for subgroup search");

  const std::uint32_t subsets = 1u << others.size();
  std::vector<bool> member(n);
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    std::vector<Element> elems{group.identity()};
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (mask & (1u << i)) {
        const auto& cls = classes.classes[others[i]];
        elems.insert(elems.end(), cls.begin(), cls.end());
      }
    }
    const int size = static_cast<int>(elems.size());
    if (size == n || n % size != 0) continue;
    std::fill(member.begin(), member.end(), false);
    for (Element e : elems) member[e] = true;
    bool closed = true;
    for (std::size_t i = 0; i < elems.size() && closed; ++i) {
      const auto row = group.row(elems[i]);
      for (Element b : elems) {
        if (!member[row[b]]) {
          closed = false;
          break;
        }
      }
    }
    if (closed) {
      std::sort(elems.begin(), elems.end());
      return elems;
    }
  }
  return std::nullopt;
}

int group_exponent(const FiniteGroup& group) {
  int exponent = 1;
  for (int g = 0; g < group.order(); ++g) {
    int order = 1;
    for (Element x = g; x != group.identity(); x = group.multiply(x, g)) ++order;
    exponent = std::lcm(exponent, order);
  }
  return exponent;
}

nlohmann::json to_json(const FiniteGroup& group) {
  nlohmann::json rows = nlohmann::json::array();
  for (int g = 0; g < group.order(); ++g) {
    const auto row = group.row(g);
    rows.push_back(std::vector<Element>(row.begin(), row.end()));
  }
  return {{"name", group.name()}, {"order", group.order()}, {"table", std::move(rows)}};
}

FiniteGroup group_from_json(const nlohmann::json& doc) {
  try {
    const int n = doc.at("order").get<int>();
    std::vector<Element> table;
    for (const auto& row : doc.at("table")) {
      const auto values = row.get<std::vector<Element>>();
      if (static_cast<int>(values.size()) != n) throw ValidationError("group table row has wrong length");
      table.insert(table.end(), values.begin(), values.end());
    }
    return FiniteGroup(doc.at("name").get<std::string>(), n, std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed group document: ") + e.what());
  }
}

}  // namespace cayley
