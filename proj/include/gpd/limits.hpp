#pragma once

#include <cstddef>

namespace gpd {

/// Exhaustive-search caps. Operations that would exceed one throw
/// CapExceeded instead of degrading to a partial answer.
struct Limits {
  std::size_t max_group_order = 512;       // subgroup lattice, isomorphism search
  std::size_t max_groupoid_order = 64;     // subgroupoid enumeration, brute-force cosets
  std::size_t max_classify_order = 12;     // constructive atlas
  std::size_t max_automorphisms = 1u << 20;
  std::size_t max_enumerated = 1u << 22;   // size of any explicitly enumerated family
};

}  // namespace gpd
