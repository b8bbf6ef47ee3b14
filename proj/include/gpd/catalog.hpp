#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpd/group.hpp"

namespace gpd {

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup klein_group();

/// Symmetries of the n-gon, order 2n. Elements 0..n-1 are the rotations
/// r^i and n..2n-1 the reflections s r^i; dihedral_group(3) lists
/// {1, rho, rho^2, tau_1, tau_2, tau_3}.
FiniteGroup dihedral_group(std::size_t n);

/// Permutations of {0..n-1} in lexicographic order; (st)(x) = s(t(x)).
FiniteGroup symmetric_group(std::size_t n);
FiniteGroup alternating_group(std::size_t n);

/// <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>, order 4n. n = 2 is Q8.
FiniteGroup dicyclic_group(std::size_t n);

/// Pairs (a, b) stored at index a * |h| + b.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Z_{n1} x Z_{n2} x ...
FiniteGroup abelian_group(std::span<const std::uint64_t> cyclic_factors);

/// h x| k with (h1, k1)(h2, k2) = (h1 * action[k1](h2), k1 k2), stored at
/// index k * |h| + h. `action` has one automorphism of h per element of k.
/// Throws NotAnAutomorphism or NotAHomomorphism.
FiniteGroup semidirect_product(const FiniteGroup& h, const FiniteGroup& k,
                               std::span<const ElementMap> action);

/// Same, with the action given only on generators of k and extended
/// multiplicatively.
FiniteGroup semidirect_product(const FiniteGroup& h, const FiniteGroup& k,
                               std::span<const elem_t> k_generators,
                               std::span<const ElementMap> generator_action);

/// x -> a*x on Z_n, an automorphism whenever gcd(a, n) = 1.
ElementMap cyclic_multiplier(std::size_t n, std::uint64_t a);

/// Name-driven constructor used by the JSON front end:
///   cyclic[n], klein[], dihedral[n], symmetric[n], alternating[n],
///   dicyclic[n], quaternion[], direct_product[n1, n2, ...] (cyclic factors),
///   from_table[m*m entries row-major].
/// Throws UnknownName or BadParams.
FiniteGroup catalog_group(std::string_view name, std::span<const std::int64_t> params);

/// Largest order for which small_groups() is complete.
constexpr std::size_t kSmallGroupsMaxOrder = 12;

/// One representative of every isomorphism class of groups of order m,
/// m <= kSmallGroupsMaxOrder, in a fixed order (cyclic first). Throws
/// CatalogGap beyond that.
std::vector<FiniteGroup> small_groups(std::size_t m);

/// Name of the small_groups() representative isomorphic to g, or an empty
/// string when |g| is beyond the list.
std::string identify_small_group(const FiniteGroup& g);

}  // namespace gpd
