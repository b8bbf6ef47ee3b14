#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpd/limits.hpp"

namespace gpd {

using elem_t = std::uint32_t;
using Table = std::vector<std::vector<elem_t>>;

/// An isomorphism or automorphism written as the image of every element.
using ElementMap = std::vector<elem_t>;

/// Finite group backed by a validated Cayley table.
///
/// Elements are the dense indices 0..order()-1 and the identity is always 0:
/// make_group_from_table swaps the identity into slot 0 when the input table
/// puts it elsewhere. Instances are immutable once built.
class FiniteGroup {
 public:
  std::size_t order() const noexcept { return order_; }
  static constexpr elem_t identity() noexcept { return 0; }

  elem_t mul(elem_t a, elem_t b) const noexcept { return table_[a * order_ + b]; }
  elem_t inv(elem_t a) const noexcept { return inverses_[a]; }
  elem_t conj(elem_t x, elem_t a) const noexcept { return mul(mul(x, a), inv(x)); }
  elem_t power(elem_t a, std::uint64_t e) const noexcept;
  std::size_t element_order(elem_t a) const noexcept { return element_orders_[a]; }

  const std::string& name() const noexcept { return name_; }
  FiniteGroup renamed(std::string name) const;

  bool is_abelian() const noexcept { return abelian_; }
  Table cayley() const;

 private:
  friend FiniteGroup make_group_from_table(const Table& table, std::string name);
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<elem_t> table_;
  std::vector<elem_t> inverses_;
  std::vector<std::size_t> element_orders_;
  std::string name_;
  bool abelian_ = true;
};

/// One failed group axiom with the elements that exhibit it.
struct Violation {
  std::string kind;
  nlohmann::json witness;
};

/// Checks closure, identity, inverses and associativity exhaustively. Returns
/// one entry per violated axiom (empty when the table is a group).
std::vector<Violation> group_axiom_violations(const Table& table);

/// Validates `table` and returns the group, or throws the first violation
/// (BadTable, NoIdentity, NoInverse, NotAssociative) with the complete list
/// attached to the witness under "violations".
FiniteGroup make_group_from_table(const Table& table, std::string name = {});

/// Sorted element set closed under product and inverse; always contains 0.
struct Subgroup {
  std::vector<elem_t> elements;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(elem_t x) const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// Canonical order: by size, then lexicographically by elements.
bool canonical_less(const Subgroup& a, const Subgroup& b);

Subgroup trivial_subgroup();
Subgroup whole_group(const FiniteGroup& g);

/// Throws NotASubgroup when `elements` is not a subgroup of g.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<elem_t> elements);

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const elem_t> generators);

/// Every subgroup, grown from cyclic seeds by pairwise joins. Canonically sorted.
std::vector<Subgroup> subgroups(const FiniteGroup& g, const Limits& limits = {});

/// Every subgroup whose order is a power of p (the trivial one included).
std::vector<Subgroup> p_subgroups(const FiniteGroup& g, std::uint64_t p,
                                  const Limits& limits = {});

/// The subgroups of order p^m where p^m exactly divides |g|.
std::vector<Subgroup> sylow_subgroups_of_group(const FiniteGroup& g, std::uint64_t p,
                                               const Limits& limits = {});

/// Some subgroup of order p^n, found by growing a chain from the trivial
/// subgroup; throws NoSuchGroupOrder when p^n does not divide |g|.
Subgroup some_p_subgroup(const FiniteGroup& g, std::uint64_t p, unsigned n);

Subgroup normalizer(const FiniteGroup& g, const Subgroup& s);
Subgroup center(const FiniteGroup& g);

/// x s x^-1
Subgroup conjugate(const FiniteGroup& g, const Subgroup& s, elem_t x);
bool is_normal_subgroup(const FiniteGroup& g, const Subgroup& s);

/// Image of a subgroup under an element map.
Subgroup image(const ElementMap& f, const Subgroup& s);

/// The subgroup as a group in its own right; element i of the result is
/// s.elements[i].
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& s);

/// Calls `visit` with every isomorphism g1 -> g2 until it returns false.
/// Backtracks over images of a generating set of g1, pruning by element order.
void for_each_isomorphism(const FiniteGroup& g1, const FiniteGroup& g2,
                          const std::function<bool(const ElementMap&)>& visit,
                          const Limits& limits = {});

std::optional<ElementMap> find_isomorphism(const FiniteGroup& g1, const FiniteGroup& g2,
                                           const Limits& limits = {});
bool are_isomorphic(const FiniteGroup& g1, const FiniteGroup& g2, const Limits& limits = {});

/// Aut(g) with the identity map first. Throws CapExceeded past max_automorphisms.
std::vector<ElementMap> automorphisms(const FiniteGroup& g, const Limits& limits = {});

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const ElementMap& f);
bool is_isomorphism(const FiniteGroup& from, const FiniteGroup& to, const ElementMap& f);

/// Histogram of element orders; a cheap isomorphism invariant.
std::vector<std::size_t> order_profile(const FiniteGroup& g);

/// Small generating set chosen greedily by largest element order.
std::vector<elem_t> generating_set(const FiniteGroup& g);

}  // namespace gpd
