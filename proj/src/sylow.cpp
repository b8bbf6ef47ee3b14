#include "gpd/sylow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "gpd/error.hpp"
#include "gpd/numeric.hpp"

namespace gpd {

namespace {

void require_wide(const Groupoid& g, const Subgroupoid& h) {
  if (!h.is_wide())
    fail("NotWide", "the subgroupoid must contain every identity",
         {{"identities", h.identity_count()}, {"parent_identities", g.identity_count()}});
}

void require_connected(const Groupoid& g) {
  if (!g.is_connected())
    fail("NotConnected", "a connected groupoid is required", {{"components", g.component_count()}});
}

std::vector<std::uint32_t> all_identities(std::size_t k) {
  std::vector<std::uint32_t> ids(k);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

/// Calls visit(blocks) for every ordered choice of disjoint subsets of
/// {0..k-1} with the given sizes.
void for_each_block_assignment(std::size_t k, const std::vector<std::size_t>& sizes,
                               const std::function<void(const std::vector<std::vector<std::uint32_t>>&)>& visit) {
  std::vector<char> used(k, 0);
  std::vector<std::vector<std::uint32_t>> blocks(sizes.size());
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t b, std::uint32_t from) {
    if (b == sizes.size()) {
      visit(blocks);
      return;
    }
    if (blocks[b].size() == sizes[b]) {
      rec(b + 1, 0);
      return;
    }
    for (std::uint32_t i = from; i < k; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      blocks[b].push_back(i);
      rec(b, i + 1);
      blocks[b].pop_back();
      used[i] = 0;
    }
  };
  rec(0, 0);
}

/// H_e for every identity, read off the member list.
std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Element>> isotropy_members(
    const Subgroupoid& h) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Element>> out;
  for (const auto& x : h.elements())
    if (x.src == x.dst) out[{x.comp, x.src}].push_back(x);
  return out;
}

}  // namespace

bool is_normal(const Groupoid& g, const Subgroupoid& h) {
  require_wide(g, h);
  const auto iso = isotropy_members(h);
  for (std::size_t f = 0; f < g.order(); ++f) {
    const Element x = g.element(f);
    const Element x_inv = g.inverse(x);
    auto it = iso.find({x.comp, x.dst});
    if (it == iso.end()) return false;
    for (const auto& y : it->second) {
      const auto z = g.compose(x_inv, *g.compose(y, x));
      if (!h.contains(*z)) return false;
    }
  }
  return true;
}

bool is_characteristic(const Groupoid& g, const Subgroupoid& h, const Limits& limits) {
  require_wide(g, h);
  // one representative R per isomorphism class of base groups, with psi_c : R -> base_c
  std::vector<std::size_t> rep_of(g.component_count());
  std::vector<ElementMap> psi(g.component_count());
  std::vector<std::size_t> reps;
  for (std::size_t c = 0; c < g.component_count(); ++c) {
    bool placed = false;
    for (auto r : reps) {
      if (auto f = find_isomorphism(g.component(r).base, g.component(c).base, limits)) {
        rep_of[c] = r;
        psi[c] = std::move(*f);
        placed = true;
        break;
      }
    }
    if (!placed) {
      reps.push_back(c);
      rep_of[c] = c;
      psi[c].resize(g.component(c).m());
      std::iota(psi[c].begin(), psi[c].end(), 0);
    }
  }

  // L_e = psi^-1(H_e) must be the same subgroup of R for every e in the class
  std::map<std::size_t, Subgroup> pulled;
  for (std::uint32_t c = 0; c < g.component_count(); ++c) {
    ElementMap psi_inv(psi[c].size());
    for (elem_t r = 0; r < psi[c].size(); ++r) psi_inv[psi[c][r]] = r;
    for (std::uint32_t i = 0; i < g.component(c).d(); ++i) {
      const Subgroup l = image(psi_inv, *h.isotropy_at(c, i));
      auto [it, inserted] = pulled.emplace(rep_of[c], l);
      if (!inserted && it->second != l) return false;
    }
  }
  for (const auto& [r, l] : pulled)
    for (const auto& a : automorphisms(g.component(r).base, limits))
      if (image(a, l) != l) return false;
  return true;
}

Subgroupoid groupoid_center(const Groupoid& g) {
  std::vector<SubComponent> parts;
  for (const auto& ref : g.identities())
    parts.push_back({ref.comp, {ref.local}, center(g.component(ref.comp).base), {}});
  return subgroupoid_from_parts(g, std::move(parts));
}

Groupoid subgroupoid_as_groupoid(const Subgroupoid& h) {
  const Groupoid& g = h.parent();
  std::vector<ConnectedComponent> comps;
  for (const auto& p : h.parts()) {
    std::vector<std::string> labels;
    for (auto i : p.identities) labels.push_back(g.identity_label({p.comp, i}));
    comps.push_back({std::move(labels), subgroup_as_group(g.component(p.comp).base, p.isotropy)});
  }
  return Groupoid(std::move(comps));
}

std::vector<Element> restrict_to(const Subgroupoid& h, const Subgroupoid& kk) {
  const Groupoid& g = h.parent();
  std::vector<Element> out;
  for (const auto& y : kk.elements()) {
    if (!h.contains(y))
      fail("HypothesisNotMet", "element lies outside the ambient subgroupoid",
           {{"element", g.element_id(y)}});
    const auto i = *h.part_of(y.comp, y.src);
    const auto& p = h.parts()[i];
    const auto& base = g.component(p.comp).base;
    const auto pos = [&](std::uint32_t id) {
      return static_cast<std::uint32_t>(
          std::lower_bound(p.identities.begin(), p.identities.end(), id) - p.identities.begin());
    };
    const auto s = pos(y.src), t = pos(y.dst);
    const elem_t k = base.mul(base.mul(base.inv(p.transversal[t]), y.g), p.transversal[s]);
    const auto at = std::lower_bound(p.isotropy.elements.begin(), p.isotropy.elements.end(), k) -
                    p.isotropy.elements.begin();
    out.push_back({static_cast<std::uint32_t>(i), s, t, static_cast<elem_t>(at)});
  }
  return out;
}

bool transitivity_check(const Groupoid& g, const Subgroupoid& h, const Subgroupoid& kk,
                        const Limits& limits) {
  if (!h.is_wide() || !is_normal(g, h))
    fail("HypothesisNotMet", "h is not a normal subgroupoid of g");
  const Groupoid hg = subgroupoid_as_groupoid(h);
  const auto local = restrict_to(h, kk);
  const Subgroupoid kk_local = validate_subgroupoid(hg, local);
  if (!kk_local.is_wide() || !is_characteristic(hg, kk_local, limits))
    fail("HypothesisNotMet", "kk is not a characteristic subgroupoid of h");
  return is_normal(g, kk);
}

Subgroupoid isotropic_conjugate(const Subgroupoid& h, const Element& x) {
  const Groupoid& g = h.parent();
  if (!g.is_connected() || !h.is_wide() || !h.is_connected())
    fail("NotWideConnected", "isotropic conjugation needs a wide connected subgroupoid",
         {{"components", h.parts().size()}, {"identities", h.identity_count()}});
  const auto& base = g.component(0).base;
  const Subgroup k = conjugate(base, *h.isotropy_at(x.comp, x.src), x.g);
  return subgroupoid_from_parts(g, {{0, all_identities(g.identity_count()), k, {}}});
}

Subgroupoid construct_dp_subgroupoid(const Groupoid& g, std::size_t d, std::uint64_t p,
                                     unsigned n) {
  require_connected(g);
  const std::size_t k = g.identity_count();
  if (d < 1 || d > k)
    fail("ProfileInfeasible", "block size must lie between 1 and the identity count",
         {{"d", d}, {"k", k}});
  const Subgroup s = some_p_subgroup(g.component(0).base, p, n);
  std::vector<std::uint32_t> ids(d);
  std::iota(ids.begin(), ids.end(), 0);
  return subgroupoid_from_parts(g, {{0, std::move(ids), s, {}}});
}

bool DPSylowFamily::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

DPSylowFamily enumerate_dp_sylow(const Groupoid& g, std::size_t d, std::uint64_t p,
                                 const Limits& limits) {
  require_connected(g);
  const auto& base = g.component(0).base;
  const std::size_t k = g.identity_count();
  if (d < 1 || d > k)
    fail("ProfileInfeasible", "block size must lie between 1 and the identity count",
         {{"d", d}, {"k", k}});
  const auto sylows = sylow_subgroups_of_group(base, p, limits);

  DPSylowFamily fam;
  fam.d = d;
  fam.p = p;
  fam.N = sylows.size();
  fam.binom = binomial(k, d);
  fam.formula = checked_mul(fam.N, fam.binom);
  if (fam.formula > limits.max_enumerated)
    cap_exceeded("number of (d,p)-Sylow subgroupoids", limits.max_enumerated, fam.formula);

  for_each_block_assignment(k, {d}, [&](const auto& blocks) {
    for (const auto& s : sylows) fam.members.push_back(subgroupoid_from_parts(g, {{0, blocks[0], s, {}}}));
  });
  std::set<std::vector<std::size_t>> distinct;
  for (const auto& h : fam.members) distinct.insert(h.members());

  const auto [e, b] = split_prime_power(base.order(), p);
  fam.checks.push_back(make_check("count", distinct.size(), fam.formula));
  fam.checks.push_back(make_check("order", fam.members.front().order(), d * d * ipow(p, e)));
  fam.checks.push_back(make_check("N_mod_p", fam.N % p, 1 % p));
  fam.checks.push_back(make_check("N_divides_b", fam.N, b, "|"));

  // any two Sylow subgroups of the base are conjugate
  std::set<std::vector<elem_t>> orbit;
  for (elem_t x = 0; x < base.order(); ++x) orbit.insert(conjugate(base, sylows.front(), x).elements);
  fam.checks.push_back(make_check("conjugacy_orbit", orbit.size(), fam.N));

  // every p-subgroup, hence every (d,p)-subgroupoid on a fixed block, sits in a Sylow one
  const auto all_p = p_subgroups(base, p, limits);
  std::size_t contained = 0;
  for (const auto& q : all_p)
    contained += std::any_of(sylows.begin(), sylows.end(), [&](const Subgroup& s) {
      return std::includes(s.elements.begin(), s.elements.end(), q.elements.begin(), q.elements.end());
    });
  fam.checks.push_back(make_check("containment", contained, all_p.size()));

  if (d == k)
    fam.checks.push_back(make_check("normalizer_index", fam.N,
                                    base.order() / normalizer(base, sylows.front()).order()));
  return fam;
}

Subgroupoid first_sylow_construct(const Groupoid& g, const SylowProfile& profile) {
  require_connected(g);
  const auto& base = g.component(0).base;
  const std::size_t k = g.identity_count();
  const auto& D = profile.D;
  const auto& P = profile.P;
  if (D.empty() || D.size() != P.size() || (!profile.exps.empty() && profile.exps.size() != D.size()))
    fail("ProfileInfeasible", "D, P and exps must have the same nonzero length",
         {{"D", D}, {"P", P}, {"exps", profile.exps}});
  const std::size_t total = std::accumulate(D.begin(), D.end(), std::size_t{0});
  if (total > k || std::find(D.begin(), D.end(), 0) != D.end())
    fail("ProfileInfeasible", "block sizes must be positive with sum at most k",
         {{"D", D}, {"k", k}});

  std::vector<SubComponent> parts;
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (!is_prime(P[i])) fail("ProfileInfeasible", "entry of P is not prime", {{"p", P[i]}});
    const auto [m, b] = split_prime_power(base.order(), P[i]);
    (void)b;
    const unsigned n = profile.exps.empty() ? m : profile.exps[i];
    if (n > m)
      fail("ProfileInfeasible", "p^n does not divide the isotropy order",
           {{"p", P[i]}, {"n", n}, {"group_order", base.order()}});
    std::vector<std::uint32_t> ids(D[i]);
    std::iota(ids.begin(), ids.end(), next);
    next += static_cast<std::uint32_t>(D[i]);
    parts.push_back({0, std::move(ids), some_p_subgroup(base, P[i], n), {}});
  }
  return subgroupoid_from_parts(g, std::move(parts));
}

std::vector<Subgroupoid> cc_permutations(const Subgroupoid& h, const Limits& limits) {
  const Groupoid& g = h.parent();
  require_connected(g);
  require_wide(g, h);
  std::vector<std::size_t> sizes;
  for (const auto& p : h.parts()) sizes.push_back(p.d());
  const auto total = multinomial(g.identity_count(), sizes);
  if (total > limits.max_enumerated)
    cap_exceeded("connected components permutations", limits.max_enumerated, total);

  std::map<std::vector<std::size_t>, Subgroupoid> out;
  for_each_block_assignment(g.identity_count(), sizes, [&](const auto& blocks) {
    std::vector<SubComponent> parts;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      parts.push_back({0, blocks[i], h.parts()[i].isotropy, {}});
    Subgroupoid s = subgroupoid_from_parts(g, std::move(parts));
    out.emplace(s.members(), std::move(s));
  });
  std::vector<Subgroupoid> result;
  for (auto& [key, s] : out) result.push_back(std::move(s));
  return result;
}

bool DPFamily::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

DPFamily enumerate_DP_sylow(const Groupoid& g, const std::vector<std::size_t>& D,
                            const std::vector<std::uint64_t>& P, bool explicit_mode,
                            const Limits& limits) {
  require_connected(g);
  const auto& base = g.component(0).base;
  const std::size_t k = g.identity_count();
  const Subgroupoid representative = first_sylow_construct(g, {D, P, {}});

  DPFamily fam;
  fam.D = D;
  fam.P = P;
  std::vector<std::vector<Subgroup>> sylows;
  for (auto p : P) {
    sylows.push_back(sylow_subgroups_of_group(base, p, limits));
    fam.N.push_back(sylows.back().size());
  }
  fam.multinomial = multinomial(k, D);
  fam.formula = fam.multinomial;
  for (auto n : fam.N) fam.formula = checked_mul(fam.formula, n);

  std::map<std::pair<std::size_t, std::uint64_t>, std::uint64_t> classes;
  for (std::size_t i = 0; i < D.size(); ++i) ++classes[{D[i], P[i]}];
  for (const auto& [cls, r] : classes) fam.repetition = checked_mul(fam.repetition, factorial(r));
  fam.count = fam.formula / fam.repetition;

  fam.normalizer_product = fam.multinomial;
  for (const auto& s : sylows)
    fam.normalizer_product =
        checked_mul(fam.normalizer_product, base.order() / normalizer(base, s.front()).order());
  fam.checks.push_back(make_check("normalizer_index_product", fam.normalizer_product, fam.formula));

  fam.isotropy_normal = std::all_of(sylows.begin(), sylows.end(), [&](const auto& s) {
    return is_normal_subgroup(base, s.front());
  });
  const auto auts = automorphisms(base, limits);
  fam.isotropy_characteristic = std::all_of(sylows.begin(), sylows.end(), [&](const auto& s) {
    return std::all_of(auts.begin(), auts.end(),
                       [&](const ElementMap& a) { return image(a, s.front()) == s.front(); });
  });
  const std::uint64_t permutations = fam.multinomial / fam.repetition;
  fam.checks.push_back(make_check("normal_iff_count", fam.isotropy_normal ? 1 : 0,
                                  fam.count == permutations ? 1 : 0));
  if (fam.isotropy_normal)
    fam.checks.push_back(make_check("normal_implies_characteristic",
                                    fam.isotropy_characteristic ? 1 : 0, 1));
  if (representative.is_wide()) fam.literal_normal = is_normal(g, representative);

  if (!explicit_mode) return fam;
  if (fam.formula > limits.max_enumerated)
    cap_exceeded("number of (D,P)-Sylow subgroupoids", limits.max_enumerated, fam.formula);

  std::map<std::vector<std::size_t>, Subgroupoid> found;
  for_each_block_assignment(k, D, [&](const auto& blocks) {
    std::vector<std::size_t> pick(D.size(), 0);
    for (;;) {
      std::vector<SubComponent> parts;
      for (std::size_t i = 0; i < D.size(); ++i) parts.push_back({0, blocks[i], sylows[i][pick[i]], {}});
      Subgroupoid s = subgroupoid_from_parts(g, std::move(parts));
      found.emplace(s.members(), std::move(s));
      std::size_t pos = 0;
      while (pos < D.size() && ++pick[pos] == sylows[pos].size()) pick[pos++] = 0;
      if (pos == D.size()) break;
    }
  });
  fam.enumerated = found.size();
  fam.checks.push_back(make_check("enumerated", *fam.enumerated, fam.count));

  // orbit of the representative under per-block conjugation and identity swaps
  const auto gens = generating_set(base);
  std::set<std::vector<std::size_t>> seen{representative.members()};
  std::deque<std::vector<SubComponent>> queue{representative.parts()};
  while (!queue.empty()) {
    const auto parts = std::move(queue.front());
    queue.pop_front();
    auto visit = [&](std::vector<SubComponent> next) {
      for (auto& p : next) std::sort(p.identities.begin(), p.identities.end());
      Subgroupoid s = subgroupoid_from_parts(g, next);
      if (seen.insert(s.members()).second) queue.push_back(s.parts());
    };
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (auto x : gens) {
        auto next = parts;
        next[i].isotropy = conjugate(base, parts[i].isotropy, x);
        visit(std::move(next));
      }
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        for (std::size_t a = 0; a < parts[i].d(); ++a)
          for (std::size_t b = 0; b < parts[j].d(); ++b) {
            auto next = parts;
            std::swap(next[i].identities[a], next[j].identities[b]);
            for (auto& p : next) p.transversal.clear();
            visit(std::move(next));
          }
    std::vector<char> used(k, 0);
    for (const auto& p : parts)
      for (auto e : p.identities) used[e] = 1;
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t a = 0; a < parts[i].d(); ++a)
        for (std::uint32_t e = 0; e < k; ++e) {
          if (used[e]) continue;
          auto next = parts;
          next[i].identities[a] = e;
          for (auto& p : next) p.transversal.clear();
          visit(std::move(next));
        }
  }
  bool all_in_family = std::all_of(seen.begin(), seen.end(),
                                   [&](const auto& key) { return found.count(key) == 1; });
  fam.orbit_covers = all_in_family && seen.size() == found.size();
  fam.checks.push_back(make_check("orbit", seen.size(), found.size()));
  for (auto& [key, s] : found) fam.members.push_back(std::move(s));
  return fam;
}

}  // namespace gpd
