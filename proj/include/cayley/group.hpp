#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace cayley {

using Element = std::int32_t;
using Permutation = std::vector<int>;

inline constexpr int kDefaultOrderCap = 5040;

/// A finite group stored as its full Cayley table.
///
/// Elements are dense indices 0..n-1 and `at(g, h)` is the index of gh.
/// Instances are immutable once built and always validated.
class FiniteGroup {
 public:
  /// Validates the table (Latin square, identity, inverses, associativity)
  /// and throws ValidationError on the first violation.
  FiniteGroup(std::string name, int order, std::vector<Element> table);

  const std::string& name() const noexcept { return name_; }
  int order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element inverse(Element g) const { return inverse_.at(check(g)); }
  std::span<const Element> inverses() const noexcept { return inverse_; }

  Element multiply(Element g, Element h) const {
    return table_[static_cast<std::size_t>(check(g)) * order_ + check(h)];
  }
  /// Unchecked row view: row(g)[h] == multiply(g, h).
  std::span<const Element> row(Element g) const {
    return {table_.data() + static_cast<std::size_t>(check(g)) * order_,
            static_cast<std::size_t>(order_)};
  }
  std::span<const Element> table() const noexcept { return table_; }

  Element square(Element g) const { return multiply(g, g); }
  bool is_abelian() const;

 private:
  Element check(Element g) const;

  std::string name_;
  int order_;
  std::vector<Element> table_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
};

// Group families accepted by make_group.
struct Cyclic { int n; };
struct Abelian { std::vector<int> factors; };
struct Dihedral { int m; };  // order 2m
struct Symmetric { int k; };
struct Alternating { int k; };
struct Psl2 { int p; };
struct FromGenerators {
  std::vector<Permutation> generators;
  std::string name = "generated";
};

using GroupFamily =
    std::variant<Cyclic, Abelian, Dihedral, Symmetric, Alternating, Psl2, FromGenerators>;

FiniteGroup make_group(const GroupFamily& family, int order_cap = kDefaultOrderCap);

/// Parses `cyclic:4`, `abelian:2x2x3`, `dihedral:6`, `sym:5`, `alt:5`, `psl2:7`
/// (plus `trivial`).
GroupFamily parse_group_spec(std::string_view spec);
FiniteGroup make_group(std::string_view spec, int order_cap = kDefaultOrderCap);

/// Free-function forms of the basic lookups.
inline Element multiply(const FiniteGroup& g, Element a, Element b) { return g.multiply(a, b); }
inline Element square_element(const FiniteGroup& g, Element a) { return g.square(a); }

struct ConjugacyClasses {
  std::vector<std::vector<Element>> classes;  // each sorted; classes ordered by least element
  std::vector<int> class_of;

  std::size_t count() const noexcept { return classes.size(); }
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& group);

/// Index of the class containing the inverses of class `k`.
std::vector<int> inverse_classes(const FiniteGroup& group, const ConjugacyClasses& classes);

/// Smallest subgroup containing `generators` (sorted element list).
std::vector<Element> subgroup_closure(const FiniteGroup& group, std::span<const Element> generators);

/// Order of the commutator subgroup [G,G].
int commutator_subgroup_order(const FiniteGroup& group);

/// |G/[G,G]|, the number of one-dimensional representations.
int abelianization_index(const FiniteGroup& group);

/// Searches unions of conjugacy classes for a proper nontrivial normal
/// subgroup. Returns its elements, or nullopt if the group is simple.
std::optional<std::vector<Element>> find_proper_normal_subgroup(const FiniteGroup& group,
                                                                const ConjugacyClasses& classes);

/// Exponent (lcm of element orders).
int group_exponent(const FiniteGroup& group);

nlohmann::json to_json(const FiniteGroup& group);
FiniteGroup group_from_json(const nlohmann::json& doc);

}  // namespace cayley
