#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gpd/groupoid.hpp"
#include "gpd/limits.hpp"

namespace gpd {

/// All partitions of n, each in nonincreasing order, listed in decreasing
/// lexicographic order ([n] first, [1,...,1] last).
std::vector<std::vector<std::size_t>> partitions(std::size_t n);

/// g(m) = number of groups of order m up to isomorphism, for m = 1..size().
class GroupCountTable {
 public:
  /// Throws BadTable unless counts is nonempty, g(1) = 1 and every entry is positive.
  explicit GroupCountTable(std::vector<std::uint64_t> counts);

  /// g(1..6) = 1, 1, 1, 2, 1, 2.
  static GroupCountTable builtin();
  /// Counts read off small_groups(), m = 1..kSmallGroupsMaxOrder.
  static GroupCountTable from_catalog();

  std::size_t size() const noexcept { return counts_.size(); }
  bool covers(std::size_t m) const noexcept { return m >= 1 && m <= counts_.size(); }
  /// Throws TableGap.
  std::uint64_t at(std::size_t m) const;
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

 private:
  std::vector<std::uint64_t> counts_;
};

/// c(q) = sum over d^2 m = q of g(m). Throws TableGap.
std::uint64_t connected_class_count(std::size_t q, const GroupCountTable& table);

/// Number of groupoids of order n up to isomorphism: multisets of connected
/// classes with orders summing to n. Throws TableGap.
std::uint64_t groupoid_count(std::size_t n, const GroupCountTable& table);

/// One connected class A_d x G in an atlas entry.
struct ClassPart {
  std::size_t d = 0;
  std::size_t m = 0;
  std::string group;
  std::size_t group_index = 0;  // position of G in small_groups(m)

  std::size_t order() const noexcept { return d * d * m; }
  friend auto operator<=>(const ClassPart&, const ClassPart&) = default;
};

struct GroupoidClass {
  std::vector<ClassPart> parts;  // largest component first
  Groupoid groupoid;
};

/// One representative per isomorphism class, ordered by component count and
/// then by the list of component orders. Identities are labelled e1, e2, ...
/// Throws CapExceeded when n > max_classify_order, CatalogGap beyond the catalog.
std::vector<GroupoidClass> enumerate_groupoid_classes(std::size_t n, const Limits& limits = {});
std::vector<Groupoid> enumerate_groupoids(std::size_t n, const Limits& limits = {});

}  // namespace gpd
