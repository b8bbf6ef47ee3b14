#include "gpd/subgroupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gpd/error.hpp"
#include "gpd/numeric.hpp"

namespace gpd {

namespace {

elem_t least_in_left_coset(const FiniteGroup& g, elem_t x, const Subgroup& k) {
  elem_t best = x;
  for (auto y : k.elements) best = std::min(best, g.mul(x, y));
  return best;
}

/// Least representative of every left coset xK.
std::vector<elem_t> left_coset_representatives(const FiniteGroup& g, const Subgroup& k) {
  std::vector<char> seen(g.order(), 0);
  std::vector<elem_t> reps;
  for (elem_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (auto y : k.elements) seen[g.mul(x, y)] = 1;
  }
  return reps;
}

std::vector<std::size_t> members_of(const Groupoid& g, std::span<const SubComponent> parts) {
  std::vector<std::size_t> out;
  for (const auto& p : parts) {
    const auto& base = g.component(p.comp).base;
    for (std::size_t si = 0; si < p.d(); ++si) {
      const elem_t xs_inv = base.inv(p.transversal[si]);
      for (std::size_t ti = 0; ti < p.d(); ++ti)
        for (auto k : p.isotropy.elements)
          out.push_back(g.index({p.comp, p.identities[si], p.identities[ti],
                                 base.mul(base.mul(p.transversal[ti], k), xs_inv)}));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool part_less(const SubComponent& a, const SubComponent& b) {
  return std::tie(a.comp, a.identities.front()) < std::tie(b.comp, b.identities.front());
}

/// Partial set partitions of {0..d-1} in restricted-growth order. With
/// `cover_all` every point must be used.
void for_each_partial_partition(std::size_t d, bool cover_all,
                                const std::function<void(const std::vector<std::vector<std::uint32_t>>&)>& visit) {
  std::vector<std::vector<std::uint32_t>> blocks;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t i) {
    if (i == d) {
      visit(blocks);
      return;
    }
    if (!cover_all) rec(i + 1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(i);
      rec(i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

struct BlockOption {
  const Subgroup* k;
  const std::vector<elem_t>* reps;
};

/// Every subgroupoid structure on one parent component (the empty choice
/// included unless cover_all).
std::vector<std::vector<SubComponent>> component_choices(const Groupoid& g, std::uint32_t c,
                                                         bool cover_all,
                                                         const std::vector<Subgroup>& subs,
                                                         const Limits& limits) {
  const auto& base = g.component(c).base;
  std::vector<std::vector<elem_t>> reps;
  for (const auto& k : subs) reps.push_back(left_coset_representatives(base, k));

  std::vector<std::vector<SubComponent>> out;
  for_each_partial_partition(g.component(c).d(), cover_all, [&](const auto& blocks) {
    // every block independently picks K and a transversal
    std::vector<std::vector<SubComponent>> per_block;
    for (const auto& b : blocks) {
      std::vector<SubComponent> options;
      for (std::size_t s = 0; s < subs.size(); ++s) {
        const auto& r = reps[s];
        std::vector<std::size_t> digit(b.size(), 0);
        for (;;) {
          SubComponent sc{c, b, subs[s], {}};
          sc.transversal.resize(b.size());
          for (std::size_t i = 0; i < b.size(); ++i) sc.transversal[i] = r[digit[i]];
          options.push_back(std::move(sc));
          std::size_t pos = 1;
          while (pos < b.size() && ++digit[pos] == r.size()) digit[pos++] = 0;
          if (pos >= b.size()) break;
        }
      }
      per_block.push_back(std::move(options));
    }
    std::vector<std::size_t> pick(per_block.size(), 0);
    for (;;) {
      std::vector<SubComponent> choice;
      for (std::size_t i = 0; i < per_block.size(); ++i) choice.push_back(per_block[i][pick[i]]);
      out.push_back(std::move(choice));
      if (out.size() > limits.max_enumerated)
        cap_exceeded("subgroupoid structures of one component", limits.max_enumerated, out.size());
      std::size_t pos = 0;
      while (pos < per_block.size() && ++pick[pos] == per_block[pos].size()) pick[pos++] = 0;
      if (pos == per_block.size()) break;
    }
  });
  return out;
}

std::uint64_t component_choice_count(const Groupoid& g, std::uint32_t c, bool cover_all,
                                     const std::vector<Subgroup>& subs) {
  const auto& comp = g.component(c);
  std::vector<std::uint64_t> weight(comp.d() + 1, 0);
  for (std::size_t size = 1; size <= comp.d(); ++size)
    for (const auto& k : subs)
      weight[size] = checked_add(weight[size],
                                 ipow(comp.m() / k.order(), static_cast<unsigned>(size - 1)));
  std::uint64_t total = 0;
  for_each_partial_partition(comp.d(), cover_all, [&](const auto& blocks) {
    std::uint64_t w = 1;
    for (const auto& b : blocks) w = checked_mul(w, weight[b.size()]);
    total = checked_add(total, w);
  });
  return total;
}

void check_order_cap(const Groupoid& g, const Limits& limits, const char* what) {
  if (g.order() > limits.max_groupoid_order) cap_exceeded(what, limits.max_groupoid_order, g.order());
}

std::vector<std::size_t> right_coset_members(const Subgroupoid& h, const Element& x) {
  const Groupoid& g = h.parent();
  std::vector<std::size_t> out;
  for (auto flat : h.members()) {
    const Element y = g.element(flat);
    if (auto p = g.compose(y, x)) out.push_back(g.index(*p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> left_coset_members(const Subgroupoid& h, const Element& x) {
  const Groupoid& g = h.parent();
  std::vector<std::size_t> out;
  for (auto flat : h.members()) {
    const Element y = g.element(flat);
    if (auto p = g.compose(x, y)) out.push_back(g.index(*p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool Subgroupoid::contains(std::size_t flat) const {
  return std::binary_search(members_.begin(), members_.end(), flat);
}

std::size_t Subgroupoid::identity_count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : parts_) n += p.d();
  return n;
}

std::optional<std::size_t> Subgroupoid::part_of(std::uint32_t comp, std::uint32_t local) const {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& p = parts_[i];
    if (p.comp == comp && std::binary_search(p.identities.begin(), p.identities.end(), local))
      return i;
  }
  return std::nullopt;
}

std::optional<Subgroup> Subgroupoid::isotropy_at(std::uint32_t comp, std::uint32_t local) const {
  auto i = part_of(comp, local);
  if (!i) return std::nullopt;
  const auto& p = parts_[*i];
  const auto pos = std::lower_bound(p.identities.begin(), p.identities.end(), local) -
                   p.identities.begin();
  return conjugate(parent_->component(comp).base, p.isotropy, p.transversal[pos]);
}

std::vector<Element> Subgroupoid::elements() const {
  std::vector<Element> out;
  out.reserve(members_.size());
  for (auto f : members_) out.push_back(parent_->element(f));
  return out;
}

std::vector<std::string> Subgroupoid::element_ids() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (auto f : members_) out.push_back(parent_->element_id(parent_->element(f)));
  return out;
}

Subgroupoid subgroupoid_from_parts(const Groupoid& g, std::vector<SubComponent> parts) {
  if (parts.empty()) fail("Empty", "a subgroupoid needs at least one component");
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  for (auto& p : parts) {
    if (p.comp >= g.component_count())
      fail("UnknownIdentity", "block refers to a missing component", {{"component", p.comp}});
    if (p.identities.empty()) fail("Empty", "empty identity block", {{"component", p.comp}});
    const auto& comp = g.component(p.comp);
    const auto& base = comp.base;

    std::vector<std::pair<std::uint32_t, elem_t>> pairs;
    if (!p.transversal.empty() && p.transversal.size() != p.identities.size())
      usage_error("BadParams", "transversal size differs from the block size",
                  {{"block", p.identities.size()}, {"transversal", p.transversal.size()}});
    for (std::size_t i = 0; i < p.identities.size(); ++i) {
      const elem_t x = p.transversal.empty() ? 0 : p.transversal[i];
      if (p.identities[i] >= comp.d() || x >= comp.m())
        fail("UnknownIdentity", "block entry out of range",
             {{"component", p.comp}, {"identity", p.identities[i]}});
      if (!used.insert({p.comp, p.identities[i]}).second)
        fail("UnknownIdentity", "identity used by two blocks",
             {{"component", p.comp}, {"identity", p.identities[i]}});
      pairs.emplace_back(p.identities[i], x);
    }
    std::sort(pairs.begin(), pairs.end());
    Subgroup k = make_subgroup(base, p.isotropy.elements);

    // move the base point to the least identity: x_t k x_s^-1 with x_b = 1
    const elem_t xb = pairs.front().second;
    k = conjugate(base, k, xb);
    const elem_t xb_inv = base.inv(xb);
    p.identities.clear();
    p.transversal.clear();
    for (const auto& [id, x] : pairs) {
      p.identities.push_back(id);
      p.transversal.push_back(least_in_left_coset(base, base.mul(x, xb_inv), k));
    }
    p.isotropy = std::move(k);
  }
  std::sort(parts.begin(), parts.end(), part_less);

  Subgroupoid out;
  out.parent_ = &g;
  out.members_ = members_of(g, parts);
  out.parts_ = std::move(parts);
  return out;
}

Subgroupoid validate_subgroupoid(const Groupoid& g, std::span<const Element> elements) {
  if (elements.empty()) fail("Empty", "a subgroupoid is nonempty");
  std::vector<std::size_t> members;
  for (const auto& x : elements) {
    if (x.comp >= g.component_count() || x.src >= g.component(x.comp).d() ||
        x.dst >= g.component(x.comp).d() || x.g >= g.component(x.comp).m())
      fail("UnknownElement", "element outside the groupoid",
           {{"element", {x.comp, x.src, x.dst, x.g}}});
    members.push_back(g.index(x));
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto in = [&](const Element& y) { return std::binary_search(members.begin(), members.end(), g.index(y)); };

  std::vector<Element> xs;
  for (auto f : members) xs.push_back(g.element(f));
  for (const auto& a : xs)
    for (const auto& b : xs)
      if (auto ab = g.compose(a, b); ab && !in(*ab))
        fail("NotClosed", "product leaves the set",
             {{"left", g.element_id(a)}, {"right", g.element_id(b)}, {"product", g.element_id(*ab)}});
  for (const auto& a : xs)
    for (const auto& e : {g.domain(a), g.range(a)})
      if (!in(e))
        fail("MissingIdentityOf", "an identity of a member is missing",
             {{"element", g.element_id(a)}, {"identity", g.element_id(e)}});
  for (const auto& a : xs)
    if (!in(g.inverse(a)))
      fail("MissingInverse", "inverse of a member is missing",
           {{"element", g.element_id(a)}, {"inverse", g.element_id(g.inverse(a))}});

  // read off the blocks: linked identities, isotropy at the least one, coset representatives
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint32_t, std::uint32_t>> root;
  std::function<std::pair<std::uint32_t, std::uint32_t>(std::pair<std::uint32_t, std::uint32_t>)>
      find = [&](std::pair<std::uint32_t, std::uint32_t> v) {
        auto r = root.at(v);
        if (r == v) return v;
        return root[v] = find(r);
      };
  for (const auto& a : xs)
    if (a.src == a.dst && a.g == 0) root[{a.comp, a.src}] = {a.comp, a.src};
  for (const auto& a : xs) {
    auto ra = find({a.comp, a.src});
    auto rb = find({a.comp, a.dst});
    if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> blocks;
  for (const auto& [v, r] : root) blocks[find(v)].push_back(v.second);

  std::vector<SubComponent> parts;
  for (auto& [r, ids] : blocks) {
    std::sort(ids.begin(), ids.end());
    SubComponent sc{r.first, ids, {}, std::vector<elem_t>(ids.size(), 0)};
    const std::uint32_t b = ids.front();
    std::vector<char> found(ids.size(), 0);
    for (const auto& a : xs) {
      if (a.comp != r.first || a.src != b) continue;
      if (a.dst == b) sc.isotropy.elements.push_back(a.g);
      const auto pos = std::lower_bound(ids.begin(), ids.end(), a.dst) - ids.begin();
      if (!found[pos] || a.g < sc.transversal[pos]) sc.transversal[pos] = a.g;
      found[pos] = 1;
    }
    std::sort(sc.isotropy.elements.begin(), sc.isotropy.elements.end());
    parts.push_back(std::move(sc));
  }
  Subgroupoid out = subgroupoid_from_parts(g, std::move(parts));
  if (out.members_ != members)
    fail("NotClosed", "set is not a union of blocks of the expected shape",
         {{"expected_order", out.members_.size()}, {"given_order", members.size()}});
  return out;
}

Subgroupoid validate_subgroupoid(const Groupoid& g, std::span<const std::string> ids) {
  std::vector<Element> xs;
  for (const auto& id : ids) {
    if (auto ref = g.find_identity(id))
      xs.push_back(g.identity_element(ref->comp, ref->local));
    else
      xs.push_back(g.parse_element_id(id));
  }
  return validate_subgroupoid(g, xs);
}

Subgroupoid whole_subgroupoid(const Groupoid& g) {
  std::vector<SubComponent> parts;
  for (std::uint32_t c = 0; c < g.component_count(); ++c) {
    std::vector<std::uint32_t> ids(g.component(c).d());
    std::iota(ids.begin(), ids.end(), 0);
    parts.push_back({c, std::move(ids), whole_group(g.component(c).base), {}});
  }
  return subgroupoid_from_parts(g, std::move(parts));
}

Subgroupoid identities_subgroupoid(const Groupoid& g) {
  std::vector<SubComponent> parts;
  for (const auto& ref : g.identities()) parts.push_back({ref.comp, {ref.local}, trivial_subgroup(), {}});
  return subgroupoid_from_parts(g, std::move(parts));
}

std::uint64_t count_subgroupoids(const Groupoid& g, bool wide_only, const Limits& limits) {
  std::uint64_t total = 1;
  for (std::uint32_t c = 0; c < g.component_count(); ++c) {
    const auto subs = subgroups(g.component(c).base, limits);
    total = checked_mul(total, component_choice_count(g, c, wide_only, subs));
  }
  return wide_only ? total : total - 1;
}

std::vector<Subgroupoid> enumerate_subgroupoids(const Groupoid& g, bool wide_only,
                                                const Limits& limits) {
  check_order_cap(g, limits, "groupoid order for subgroupoid enumeration");
  const auto expected = count_subgroupoids(g, wide_only, limits);
  if (expected > limits.max_enumerated)
    cap_exceeded("number of subgroupoids", limits.max_enumerated, expected);

  std::vector<std::vector<std::vector<SubComponent>>> choices;
  for (std::uint32_t c = 0; c < g.component_count(); ++c)
    choices.push_back(
        component_choices(g, c, wide_only, subgroups(g.component(c).base, limits), limits));

  std::vector<Subgroupoid> out;
  out.reserve(expected);
  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    std::vector<SubComponent> parts;
    for (std::size_t c = 0; c < choices.size(); ++c)
      parts.insert(parts.end(), choices[c][pick[c]].begin(), choices[c][pick[c]].end());
    if (!parts.empty()) out.push_back(subgroupoid_from_parts(g, std::move(parts)));
    std::size_t pos = 0;
    while (pos < choices.size() && ++pick[pos] == choices[pos].size()) pick[pos++] = 0;
    if (pos == choices.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const Subgroupoid& a, const Subgroupoid& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return out;
}

Check make_check(std::string name, std::uint64_t lhs, std::uint64_t rhs, std::string relation) {
  bool pass = false;
  if (relation == "==")
    pass = lhs == rhs;
  else if (relation == "<=")
    pass = lhs <= rhs;
  else if (relation == "|")
    pass = lhs != 0 && rhs % lhs == 0;
  return {std::move(name), lhs, rhs, std::move(relation), pass};
}

nlohmann::json to_json(const Check& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"relation", c.relation},
          {"pass", c.pass}};
}

bool OrderReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

OrderReport lagrange_order_report(const Groupoid& g, const Subgroupoid& h) {
  OrderReport r;
  std::uint64_t sum = 0, ids = 0;
  for (const auto& p : h.parts()) {
    const auto parent_m = g.component(p.comp).m();
    r.parts.push_back({p.d(), p.m(), parent_m});
    sum += p.order();
    ids += p.d();
    r.checks.push_back(make_check("isotropy_divides", p.m(), parent_m, "|"));
  }
  r.checks.insert(r.checks.begin(), make_check("identities_bound", ids, g.identity_count(), "<="));
  r.checks.insert(r.checks.begin(), make_check("order", h.order(), sum));
  if (g.is_connected() && h.is_connected() && g.identity_count() % ids == 0) {
    auto c = make_check("order_divides", h.order(), g.order(), "|");
    r.divides = c.pass;
    r.checks.push_back(std::move(c));
  }
  return r;
}

Coset coset(const Subgroupoid& h, const Element& x, Side side) {
  return {side, x, side == Side::right ? right_coset_members(h, x) : left_coset_members(h, x)};
}

CosetCardinality coset_cardinality(const Subgroupoid& h, const Element& x) {
  CosetCardinality out;
  out.actual = right_coset_members(h, x).size();
  if (auto i = h.part_of(x.comp, x.dst)) {
    const auto& p = h.parts()[*i];
    out.formula = p.d() * p.m();
  }
  return out;
}

namespace {

std::uint64_t index_sum(const Groupoid& g, const Subgroupoid& h, bool as_stated) {
  std::map<std::uint32_t, std::vector<const SubComponent*>> by_comp;
  for (const auto& p : h.parts()) by_comp[p.comp].push_back(&p);
  std::uint64_t total = 0;
  for (const auto& [c, parts] : by_comp) {
    std::uint64_t inner = 0, h0 = 0;
    for (const auto* p : parts) {
      inner += g.component(c).m() / p->m();
      h0 += p->d();
    }
    total = checked_add(total, checked_mul(as_stated ? h0 : g.component(c).d(), inner));
  }
  return total;
}

}  // namespace

std::uint64_t index_formula(const Groupoid& g, const Subgroupoid& h) { return index_sum(g, h, false); }

std::uint64_t index_formula_as_stated(const Groupoid& g, const Subgroupoid& h) {
  return index_sum(g, h, true);
}

IndexCount index_bruteforce(const Groupoid& g, const Subgroupoid& h, const Limits& limits) {
  check_order_cap(g, limits, "groupoid order for coset enumeration");
  std::set<std::vector<std::size_t>> right, left;
  for (std::size_t f = 0; f < g.order(); ++f) {
    const Element x = g.element(f);
    if (auto m = right_coset_members(h, x); !m.empty()) right.insert(std::move(m));
    if (auto m = left_coset_members(h, x); !m.empty()) left.insert(std::move(m));
  }
  return {right.size(), left.size()};
}

LagrangeReport lagrange_identity_check(const Groupoid& g, const Subgroupoid& h) {
  if (!h.is_wide())
    fail("NotWide", "the identity is stated for wide subgroupoids",
         {{"identities", h.identity_count()}, {"parent_identities", g.identity_count()}});
  std::map<std::uint32_t, std::vector<const SubComponent*>> by_comp;
  for (const auto& p : h.parts()) by_comp[p.comp].push_back(&p);

  std::uint64_t rhs = 0, rhs_stated = 0;
  for (const auto& [c, parts] : by_comp) {
    const auto k = g.component(c).d(), m = g.component(c).m();
    std::uint64_t h0 = 0;
    for (const auto* p : parts) h0 += p->d();
    std::uint64_t inner = 0, inner_stated = 0;
    for (const auto* p : parts) {
      inner += (m / p->m()) * p->d() * p->m();
      inner_stated += (m / p->m()) * h0 * p->m();
    }
    rhs += k * inner;
    rhs_stated += k * inner_stated;
  }
  LagrangeReport r;
  r.identity = make_check("identity", g.order(), rhs);
  r.identity_as_stated = make_check("identity_as_stated", g.order(), rhs_stated);

  const auto& first = h.parts().front();
  const bool uniform = std::all_of(h.parts().begin(), h.parts().end(), [&](const SubComponent& p) {
    return p.d() == first.d() && p.m() == first.m();
  });
  if (uniform)
    r.corollary = make_check("corollary", g.order(), index_formula(g, h) * first.d() * first.m());
  return r;
}

}  // namespace gpd
