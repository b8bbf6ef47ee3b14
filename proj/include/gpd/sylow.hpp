#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gpd/groupoid.hpp"
#include "gpd/limits.hpp"
#include "gpd/subgroupoid.hpp"

namespace gpd {

/// Block sizes D, primes P and exponents (empty exps = full p-part of |G_e|).
struct SylowProfile {
  std::vector<std::size_t> D;
  std::vector<std::uint64_t> P;
  std::vector<unsigned> exps;
};

/// g^-1 H g within H for every g: checked element by element over all
/// conjugations of isotropy members. Throws NotWide.
bool is_normal(const Groupoid& g, const Subgroupoid& h);

/// Invariance under every isomorphism between isotropy groups, including
/// automorphisms. Throws NotWide, CapExceeded.
bool is_characteristic(const Groupoid& g, const Subgroupoid& h, const Limits& limits = {});

/// Union of the centers of the isotropy groups, as a wide subgroupoid.
Subgroupoid groupoid_center(const Groupoid& g);

/// h viewed as a groupoid on its own: one component per block, labelled with
/// the parent's identity labels, base group the block's isotropy K.
Groupoid subgroupoid_as_groupoid(const Subgroupoid& h);

/// The members of kk (contained in h) re-expressed in subgroupoid_as_groupoid(h).
std::vector<Element> restrict_to(const Subgroupoid& h, const Subgroupoid& kk);

/// With kk characteristic in h and h normal in g, returns is_normal(g, kk).
/// Throws HypothesisNotMet when kk is not inside h, not characteristic in h,
/// or h is not normal in g.
bool transitivity_check(const Groupoid& g, const Subgroupoid& h, const Subgroupoid& kk,
                        const Limits& limits = {});

/// A_k x (x H_d(x) x^-1) for a wide connected h. Throws NotWideConnected.
Subgroupoid isotropic_conjugate(const Subgroupoid& h, const Element& x);

/// A_d on the first d identities times a subgroup of order p^n. Throws
/// NotConnected, NotPrime, NoSuchGroupOrder, ProfileInfeasible (d out of range).
Subgroupoid construct_dp_subgroupoid(const Groupoid& g, std::size_t d, std::uint64_t p,
                                     unsigned n);

struct DPSylowFamily {
  std::size_t d = 0;
  std::uint64_t p = 0;
  std::vector<Subgroupoid> members;  // every d-subset times every p-Sylow subgroup
  std::uint64_t N = 0;               // p-Sylow subgroups of the base group
  std::uint64_t binom = 0;           // C(k, d)
  std::uint64_t formula = 0;         // N * C(k, d)
  std::vector<Check> checks;         // counting, conjugacy, containment, normalizer index

  bool ok() const;
};

/// Throws NotConnected, NotPrime, CapExceeded.
DPSylowFamily enumerate_dp_sylow(const Groupoid& g, std::size_t d, std::uint64_t p,
                                 const Limits& limits = {});

/// Disjoint A_{d_i} x K_i blocks on consecutive identities, |K_i| = p_i^{n_i}.
/// Throws NotConnected, ProfileInfeasible.
Subgroupoid first_sylow_construct(const Groupoid& g, const SylowProfile& profile);

/// Every rearrangement of h's identity blocks keeping each block's size and
/// isotropy subgroup; h itself included. Throws NotWide, NotConnected,
/// CapExceeded.
std::vector<Subgroupoid> cc_permutations(const Subgroupoid& h, const Limits& limits = {});

struct DPFamily {
  std::vector<std::size_t> D;
  std::vector<std::uint64_t> P;
  std::vector<std::uint64_t> N;        // p_i-Sylow counts of the base group
  std::uint64_t multinomial = 0;       // k! / (d_1! ... d_l! (k - sum d)!)
  std::uint64_t formula = 0;           // multinomial * prod N_i
  std::uint64_t repetition = 1;        // product of r! over repeated (d_i, p_i) classes
  std::uint64_t count = 0;             // formula / repetition
  std::uint64_t normalizer_product = 0;  // prod (G_e : N(S_i)) * multinomial
  std::optional<std::uint64_t> enumerated;
  std::vector<Subgroupoid> members;    // filled in explicit mode
  std::optional<bool> orbit_covers;    // conjugation + block moves reach every member
  bool isotropy_normal = false;        // every isotropy group normal in G_e
  bool isotropy_characteristic = false;
  std::optional<bool> literal_normal;  // is_normal on a representative, wide profiles only
  std::vector<Check> checks;

  bool ok() const;
};

/// n_{D,P}. Explicit mode enumerates the family (under max_enumerated) and
/// compares. Throws NotConnected, ProfileInfeasible, CapExceeded.
DPFamily enumerate_DP_sylow(const Groupoid& g, const std::vector<std::size_t>& D,
                            const std::vector<std::uint64_t>& P, bool explicit_mode,
                            const Limits& limits = {});

}  // namespace gpd
