#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpd/group.hpp"
#include "gpd/limits.hpp"

namespace gpd {

/// A morphism src -> dst carrying base-group element g, inside one
/// connected component. d(x) = src and r(x) = dst; the product a*b is
/// defined iff a.src == b.dst ("b first, then a").
struct Element {
  std::uint32_t comp = 0;
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  elem_t g = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

/// A connected groupoid in the form A_d x G: `identities` are the d objects
/// and `base` is the isotropy group at any of them.
struct ConnectedComponent {
  std::vector<std::string> identities;
  FiniteGroup base;

  std::size_t d() const noexcept { return identities.size(); }
  std::size_t m() const noexcept { return base.order(); }
  std::size_t order() const noexcept { return d() * d() * m(); }
};

/// Finite groupoid stored as a disjoint union of A_d x G components.
///
/// Every element also has a flat index in 0..order()-1 (component offset,
/// then src, dst, g in row-major order) used for bitsets and tables, and a
/// canonical id string "comp/src/dst/g" used by the CLI.
class Groupoid {
 public:
  /// Throws Empty or DuplicateLabels.
  explicit Groupoid(std::vector<ConnectedComponent> components);

  const std::vector<ConnectedComponent>& components() const noexcept { return components_; }
  const ConnectedComponent& component(std::size_t c) const { return components_.at(c); }
  std::size_t component_count() const noexcept { return components_.size(); }
  std::size_t identity_count() const noexcept { return identity_count_; }
  std::size_t order() const noexcept { return order_; }
  bool is_connected() const noexcept { return components_.size() == 1; }

  std::size_t offset(std::size_t c) const { return offsets_.at(c); }
  std::size_t index(const Element& x) const noexcept;
  Element element(std::size_t flat) const;

  /// a*b, or nullopt when d(a) != r(b).
  std::optional<Element> compose(const Element& a, const Element& b) const noexcept;
  Element domain(const Element& x) const noexcept { return {x.comp, x.src, x.src, 0}; }
  Element range(const Element& x) const noexcept { return {x.comp, x.dst, x.dst, 0}; }
  Element inverse(const Element& x) const noexcept;
  Element identity_element(std::uint32_t comp, std::uint32_t local) const noexcept {
    return {comp, local, local, 0};
  }
  bool is_identity(const Element& x) const noexcept { return x.src == x.dst && x.g == 0; }

  struct IdentityRef {
    std::uint32_t comp;
    std::uint32_t local;
    friend auto operator<=>(const IdentityRef&, const IdentityRef&) = default;
  };
  std::optional<IdentityRef> find_identity(std::string_view label) const;
  const std::string& identity_label(IdentityRef ref) const;
  std::vector<IdentityRef> identities() const;

  std::string element_id(const Element& x) const;
  /// Parses "comp/src/dst/g"; throws UnknownElement.
  Element parse_element_id(std::string_view id) const;

 private:
  std::vector<ConnectedComponent> components_;
  std::vector<std::size_t> offsets_;
  std::map<std::string, IdentityRef, std::less<>> label_index_;
  std::size_t identity_count_ = 0;
  std::size_t order_ = 0;
};

/// A groupoid given as an explicit partial multiplication table.
struct RawGroupoid {
  std::vector<std::string> elements;
  /// (g, h) -> gh; absent pairs are undefined.
  std::map<std::pair<std::string, std::string>, std::string> product;
};

/// A RawGroupoid whose axioms have been verified, with its structure maps.
struct CheckedRaw {
  RawGroupoid raw;
  std::size_t size = 0;
  std::vector<std::int32_t> table;  // size*size, -1 = undefined
  std::vector<std::uint32_t> identities;
  std::vector<std::uint32_t> domain, range, inverse;

  std::int32_t mul(std::size_t a, std::size_t b) const { return table[a * size + b]; }
};

/// Exhaustive axiom scan. Throws the first violation found
/// (Empty, DuplicateLabels, UnknownElement, MissingIdentity,
/// CompositionDomainError, MissingInverse, AssociativityViolation); the
/// full list sits in the witness under "violations".
CheckedRaw validate_raw(const RawGroupoid& raw);

/// Decomposition into components plus the element bijection onto them.
struct StructureResult {
  Groupoid groupoid;
  std::vector<Element> witness;  // witness[i] is the image of raw element i
};

/// Splits the identities into connected classes, takes the lexicographically
/// least identity label e of each class as base point and least-index
/// transition elements t_f in G(e, f), and maps g to
/// (d(g), r(g), t_{r(g)}^-1 g t_{d(g)}). The map is checked to be bijective
/// and multiplicative before returning.
StructureResult structure(const RawGroupoid& raw);
StructureResult structure(const CheckedRaw& checked);

/// Export with identities labelled by their identity labels and every other
/// element by its canonical id.
RawGroupoid to_raw(const Groupoid& g);

/// Single component A_d x base. Throws Empty or DuplicateLabels.
Groupoid make_connected(std::vector<std::string> identities, FiniteGroup base);

/// Throws DuplicateLabels when the parts share identity labels.
Groupoid disjoint_union(std::span<const Groupoid> parts);

/// G(e1, e2) = {x : d(x) = e1, r(x) = e2}. Throws UnknownIdentity.
std::vector<Element> hom_set(const Groupoid& g, std::string_view e1, std::string_view e2);

std::size_t groupoid_order(const Groupoid& g);

/// Iso(G): every element with src == dst.
std::vector<Element> isotropy_subgroupoid(const Groupoid& g);

/// Components matched by identity count and base-group isomorphism.
bool are_isomorphic_groupoids(const Groupoid& a, const Groupoid& b, const Limits& limits = {});

/// For a connected groupoid: squarefree order implies a single identity.
/// Throws NotConnected.
bool corollary_squarefree_check(const Groupoid& g);

}  // namespace gpd
