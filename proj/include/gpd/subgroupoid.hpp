#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpd/group.hpp"
#include "gpd/groupoid.hpp"
#include "gpd/limits.hpp"

namespace gpd {

/// One connected component of a subgroupoid, sitting inside parent
/// component `comp` on the local identities `identities` (sorted; the first
/// is the base point b).
///
/// With K the isotropy group at b and x_t a representative of the left coset
/// of K holding every g with (b, t, g) in the subgroupoid, the members are
/// exactly (s, t, x_t k x_s^-1) for s, t in the block and k in K. x_b = 1 and
/// every x_t is the least element of its coset.
struct SubComponent {
  std::uint32_t comp = 0;
  std::vector<std::uint32_t> identities;
  Subgroup isotropy;
  std::vector<elem_t> transversal;

  std::size_t d() const noexcept { return identities.size(); }
  std::size_t m() const noexcept { return isotropy.order(); }
  std::size_t order() const noexcept { return d() * d() * m(); }

  friend bool operator==(const SubComponent&, const SubComponent&) = default;
};

/// A subgroupoid of a Groupoid, held as a sorted set of flat element
/// indices together with its component decomposition. Keeps a pointer to
/// the parent, which must outlive it.
class Subgroupoid {
 public:
  const Groupoid& parent() const noexcept { return *parent_; }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  const std::vector<SubComponent>& parts() const noexcept { return parts_; }

  std::size_t order() const noexcept { return members_.size(); }
  bool contains(std::size_t flat) const;
  bool contains(const Element& x) const { return contains(parent_->index(x)); }

  std::size_t identity_count() const noexcept;
  bool is_wide() const noexcept { return identity_count() == parent_->identity_count(); }
  bool is_connected() const noexcept { return parts_.size() == 1; }

  /// Index into parts() of the block holding identity (comp, local), if any.
  std::optional<std::size_t> part_of(std::uint32_t comp, std::uint32_t local) const;

  /// H_e as a subgroup of the parent base group; nullopt when e is not in H.
  std::optional<Subgroup> isotropy_at(std::uint32_t comp, std::uint32_t local) const;

  std::vector<Element> elements() const;
  std::vector<std::string> element_ids() const;

  friend bool operator==(const Subgroupoid& a, const Subgroupoid& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  friend Subgroupoid subgroupoid_from_parts(const Groupoid& g, std::vector<SubComponent> parts);
  friend Subgroupoid validate_subgroupoid(const Groupoid& g, std::span<const Element> elements);

  const Groupoid* parent_ = nullptr;
  std::vector<std::size_t> members_;
  std::vector<SubComponent> parts_;
};

/// Closure scan over the given set. Throws Empty, NotClosed (witness pair),
/// MissingIdentityOf or MissingInverse, in that order of precedence.
Subgroupoid validate_subgroupoid(const Groupoid& g, std::span<const Element> elements);
Subgroupoid validate_subgroupoid(const Groupoid& g, std::span<const std::string> ids);

/// Builds the subgroupoid described by its blocks. Transversal entries are
/// replaced by the least element of their coset; an empty transversal means
/// all ones. Throws Empty, UnknownIdentity (block out of range or overlapping
/// another), NotASubgroup.
Subgroupoid subgroupoid_from_parts(const Groupoid& g, std::vector<SubComponent> parts);

/// The whole groupoid, its identities G_0 and its isotropy part Iso(G).
Subgroupoid whole_subgroupoid(const Groupoid& g);
Subgroupoid identities_subgroupoid(const Groupoid& g);

/// Every subgroupoid (or every wide one), each produced once: per parent
/// component a partial set partition of its identities, a subgroup per
/// block, and a left-coset transversal per block. Sorted by order, then by
/// members. Throws CapExceeded when |g| > max_groupoid_order or the family
/// would exceed max_enumerated.
std::vector<Subgroupoid> enumerate_subgroupoids(const Groupoid& g, bool wide_only,
                                                const Limits& limits = {});

/// Number of subgroupoids enumerate_subgroupoids would return, without
/// building them.
std::uint64_t count_subgroupoids(const Groupoid& g, bool wide_only, const Limits& limits = {});

/// One checked relation: lhs == rhs, lhs <= rhs, or lhs divides rhs ("|").
struct Check {
  std::string name;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  std::string relation = "==";
  bool pass = false;
};
Check make_check(std::string name, std::uint64_t lhs, std::uint64_t rhs,
                 std::string relation = "==");
nlohmann::json to_json(const Check& c);

struct OrderPart {
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t parent_m = 0;
};

struct OrderReport {
  std::vector<OrderPart> parts;
  std::vector<Check> checks;
  /// Set when g and h are connected and |H_0| divides |G_0|: whether |H| divides |G|.
  std::optional<bool> divides;

  bool ok() const;
};

/// |H| = sum d_i^2 m_i, sum d_i <= k, m_i | |G_e|, and the divisibility part
/// for connected pairs.
OrderReport lagrange_order_report(const Groupoid& g, const Subgroupoid& h);

enum class Side { left, right };

struct Coset {
  Side side = Side::right;
  Element representative;
  std::vector<std::size_t> members;  // sorted flat indices, possibly empty
};

/// Right: {hx : h in H, d(h) = r(x)}. Left: {xh : h in H, r(h) = d(x)}.
Coset coset(const Subgroupoid& h, const Element& x, Side side);

struct CosetCardinality {
  std::size_t formula = 0;  // delta * |H_r(x)|
  std::size_t actual = 0;   // |Hx| counted directly
  bool agree() const noexcept { return formula == actual; }
};
CosetCardinality coset_cardinality(const Subgroupoid& h, const Element& x);

/// sum over parent components j meeting H of k_j * sum over blocks i of (m_j : |K_i|),
/// with k_j the identity count of the parent component.
std::uint64_t index_formula(const Groupoid& g, const Subgroupoid& h);

/// The same sum weighted by |(H_j)_0| instead of k_j. Agrees with
/// index_formula when h is wide.
std::uint64_t index_formula_as_stated(const Groupoid& g, const Subgroupoid& h);

struct IndexCount {
  std::size_t right = 0;  // distinct nonempty right cosets
  std::size_t left = 0;   // distinct nonempty left cosets
};

/// Direct coset count. Throws CapExceeded when |g| > max_groupoid_order.
IndexCount index_bruteforce(const Groupoid& g, const Subgroupoid& h, const Limits& limits = {});

struct LagrangeReport {
  Check identity;                   // |G| against the per-component sum
  Check identity_as_stated;         // inner weight |(H_j)_0| instead of |(K_i)_0|
  std::optional<Check> corollary;   // |G| = (G:H) d |K| when every block shares d and |K|
  bool ok() const noexcept { return identity.pass && (!corollary || corollary->pass); }
};

/// Throws NotWide.
LagrangeReport lagrange_identity_check(const Groupoid& g, const Subgroupoid& h);

}  // namespace gpd
