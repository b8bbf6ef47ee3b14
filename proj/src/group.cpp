#include "gpd/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include "gpd/error.hpp"
#include "gpd/numeric.hpp"

namespace gpd {

namespace {

// Subgroup generated by `gens`, or nullopt once it grows past `bound`.
std::optional<std::vector<elem_t>> closure(const FiniteGroup& g, std::span<const elem_t> gens,
                                           std::size_t bound) {
  std::vector<char> seen(g.order(), 0);
  std::vector<elem_t> out{FiniteGroup::identity()};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (elem_t s : gens) {
      const elem_t y = g.mul(out[i], s);
      if (seen[y]) continue;
      seen[y] = 1;
      out.push_back(y);
      if (out.size() > bound) return std::nullopt;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<elem_t> closure(const FiniteGroup& g, std::span<const elem_t> gens) {
  return *closure(g, gens, g.order());
}

bool is_p_power(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

struct SubgroupWithGens {
  Subgroup group;
  std::vector<elem_t> gens;
};

// levels[j] holds every subgroup of order p^j, for j = 0..max_level.
std::vector<std::vector<SubgroupWithGens>> p_subgroup_levels(const FiniteGroup& g, std::uint64_t p,
                                                             unsigned max_level,
                                                             const Limits& limits) {
  std::vector<std::vector<SubgroupWithGens>> levels;
  levels.push_back({{trivial_subgroup(), {}}});
  std::size_t total = 1;
  for (unsigned level = 1; level <= max_level; ++level) {
    std::vector<SubgroupWithGens> next;
    std::set<std::vector<elem_t>> seen;
    for (const auto& [base, gens] : levels.back()) {
      const std::size_t target = base.order() * p;
      std::vector<char> covered(g.order(), 0);
      for (elem_t x : base.elements) covered[x] = 1;
      for (elem_t x = 0; x < g.order(); ++x) {
        if (covered[x] || !is_p_power(g.element_order(x), p)) continue;
        std::vector<elem_t> ext = gens;
        ext.push_back(x);
        auto q = closure(g, ext, target);
        if (!q || q->size() != target) continue;
        for (elem_t y : *q) covered[y] = 1;
        if (seen.insert(*q).second) {
          next.push_back({Subgroup{std::move(*q)}, std::move(ext)});
          if (++total > limits.max_enumerated)
            cap_exceeded("number of p-subgroups", limits.max_enumerated, total);
        }
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
      return canonical_less(a.group, b.group);
    });
    levels.push_back(std::move(next));
  }
  return levels;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) fail("NotPrime", std::to_string(p) + " is not prime", {{"p", p}});
}

void check_group_cap(const FiniteGroup& g, const Limits& limits, const char* what) {
  if (g.order() > limits.max_group_order) cap_exceeded(what, limits.max_group_order, g.order());
}

}  // namespace

elem_t FiniteGroup::power(elem_t a, std::uint64_t e) const noexcept {
  elem_t r = identity();
  elem_t base = a;
  while (e > 0) {
    if (e & 1U) r = mul(r, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return r;
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  FiniteGroup copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Table FiniteGroup::cayley() const {
  Table t(order_, std::vector<elem_t>(order_));
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

std::vector<Violation> group_axiom_violations(const Table& table) {
  std::vector<Violation> out;
  const std::size_t m = table.size();
  if (m == 0) {
    out.push_back({"BadTable", {{"reason", "empty table"}}});
    return out;
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (table[a].size() != m) {
      out.push_back({"BadTable", {{"reason", "table is not square"}, {"row", a}}});
      return out;
    }
    for (std::size_t b = 0; b < m; ++b) {
      if (table[a][b] >= m) {
        out.push_back({"BadTable",
                       {{"reason", "entry out of range"}, {"row", a}, {"col", b},
                        {"value", table[a][b]}}});
        return out;
      }
    }
  }

  std::optional<elem_t> identity;
  for (elem_t e = 0; e < m && !identity; ++e) {
    bool ok = true;
    for (elem_t x = 0; x < m && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) {
    // witness: where the best left-identity candidate 0 breaks
    elem_t bad = 0;
    while (bad + 1 < m && table[0][bad] == bad && table[bad][0] == bad) ++bad;
    out.push_back({"NoIdentity", {{"candidate", 0}, {"fails_at", bad}}});
  } else {
    for (elem_t x = 0; x < m; ++x) {
      bool found = false;
      for (elem_t y = 0; y < m && !found; ++y)
        found = table[x][y] == *identity && table[y][x] == *identity;
      if (!found) {
        out.push_back({"NoInverse", {{"element", x}}});
        break;
      }
    }
  }

  for (elem_t a = 0; a < m; ++a) {
    for (elem_t b = 0; b < m; ++b) {
      const elem_t ab = table[a][b];
      for (elem_t c = 0; c < m; ++c) {
        if (table[ab][c] != table[a][table[b][c]]) {
          out.push_back({"NotAssociative", {{"a", a}, {"b", b}, {"c", c}}});
          return out;
        }
      }
    }
  }
  return out;
}

FiniteGroup make_group_from_table(const Table& table, std::string name) {
  auto violations = group_axiom_violations(table);
  if (!violations.empty()) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& v : violations) all.push_back({{"kind", v.kind}, {"witness", v.witness}});
    nlohmann::json witness = violations.front().witness;
    witness["violations"] = all;
    fail(violations.front().kind, "Cayley table is not a group: " + violations.front().kind,
         witness);
  }

  const std::size_t m = table.size();
  elem_t e = 0;
  while (table[e][0] != 0 || table[0][e] != 0 || table[e][e] != e) ++e;
  // relabel by the transposition (0 e) so that the identity is 0
  auto relabel = [e](elem_t x) -> elem_t { return x == 0 ? e : (x == e ? 0 : x); };

  FiniteGroup g;
  g.order_ = m;
  g.name_ = std::move(name);
  g.table_.resize(m * m);
  for (elem_t a = 0; a < m; ++a)
    for (elem_t b = 0; b < m; ++b)
      g.table_[a * m + b] = relabel(table[relabel(a)][relabel(b)]);

  g.inverses_.resize(m);
  for (elem_t a = 0; a < m; ++a)
    for (elem_t b = 0; b < m; ++b)
      if (g.table_[a * m + b] == 0) g.inverses_[a] = b;

  g.element_orders_.resize(m);
  for (elem_t a = 0; a < m; ++a) {
    std::size_t k = 1;
    // x runs through a^k
    for (elem_t x = a; x != 0; x = g.table_[x * m + a]) ++k;
    g.element_orders_[a] = k;
  }

  for (elem_t a = 0; a < m && g.abelian_; ++a)
    for (elem_t b = a + 1; b < m && g.abelian_; ++b)
      g.abelian_ = g.table_[a * m + b] == g.table_[b * m + a];
  return g;
}

bool Subgroup::contains(elem_t x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements < b.elements;
}

Subgroup trivial_subgroup() { return Subgroup{{FiniteGroup::identity()}}; }

Subgroup whole_group(const FiniteGroup& g) {
  Subgroup s;
  s.elements.resize(g.order());
  for (elem_t i = 0; i < g.order(); ++i) s.elements[i] = i;
  return s;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<elem_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (elem_t x : elements)
    if (x >= g.order())
      fail("NotASubgroup", "element out of range", {{"element", x}});
  Subgroup s{std::move(elements)};
  if (!s.contains(FiniteGroup::identity()))
    fail("NotASubgroup", "subset does not contain the identity", {{"missing", 0}});
  for (elem_t a : s.elements) {
    if (!s.contains(g.inv(a)))
      fail("NotASubgroup", "subset not closed under inverse", {{"element", a}});
    for (elem_t b : s.elements)
      if (!s.contains(g.mul(a, b)))
        fail("NotASubgroup", "subset not closed under product", {{"a", a}, {"b", b}});
  }
  return s;
}

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const elem_t> generators) {
  return Subgroup{closure(g, generators)};
}

std::vector<Subgroup> subgroups(const FiniteGroup& g, const Limits& limits) {
  check_group_cap(g, limits, "group order for subgroup enumeration");

  // cyclic seeds, one generator each
  std::vector<elem_t> seed_gens;
  std::vector<Subgroup> seeds;
  std::set<std::vector<elem_t>> seen;
  for (elem_t x = 0; x < g.order(); ++x) {
    const elem_t gen[] = {x};
    auto c = closure(g, gen);
    if (seen.insert(c).second) {
      seed_gens.push_back(x);
      seeds.push_back(Subgroup{std::move(c)});
    }
  }

  std::vector<SubgroupWithGens> all;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    std::vector<elem_t> gens;
    if (seed_gens[i] != 0) gens.push_back(seed_gens[i]);
    all.push_back({seeds[i], std::move(gens)});
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t c = 0; c < seeds.size(); ++c) {
      if (all[i].group.contains(seed_gens[c])) continue;
      std::vector<elem_t> gens = all[i].gens;
      gens.push_back(seed_gens[c]);
      auto joined = closure(g, gens);
      if (!seen.insert(joined).second) continue;
      all.push_back({Subgroup{std::move(joined)}, std::move(gens)});
      if (all.size() > limits.max_enumerated)
        cap_exceeded("number of subgroups", limits.max_enumerated, all.size());
    }
  }

  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (auto& s : all) out.push_back(std::move(s.group));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Subgroup> p_subgroups(const FiniteGroup& g, std::uint64_t p, const Limits& limits) {
  require_prime(p);
  const auto [m, b] = split_prime_power(g.order(), p);
  (void)b;
  std::vector<Subgroup> out;
  for (auto& level : p_subgroup_levels(g, p, m, limits))
    for (auto& s : level) out.push_back(std::move(s.group));
  return out;
}

std::vector<Subgroup> sylow_subgroups_of_group(const FiniteGroup& g, std::uint64_t p,
                                               const Limits& limits) {
  require_prime(p);
  const auto [m, b] = split_prime_power(g.order(), p);
  if (b == 1) return {whole_group(g)};
  auto levels = p_subgroup_levels(g, p, m, limits);
  std::vector<Subgroup> out;
  for (auto& s : levels.back()) out.push_back(std::move(s.group));
  return out;
}

Subgroup some_p_subgroup(const FiniteGroup& g, std::uint64_t p, unsigned n) {
  require_prime(p);
  const auto [m, b] = split_prime_power(g.order(), p);
  (void)b;
  if (n > m)
    fail("NoSuchGroupOrder", "p^n does not divide the group order",
         {{"p", p}, {"n", n}, {"group_order", g.order()}});
  std::vector<elem_t> gens;
  Subgroup current = trivial_subgroup();
  for (unsigned level = 1; level <= n; ++level) {
    const std::size_t target = current.order() * p;
    bool extended = false;
    for (elem_t x = 0; x < g.order() && !extended; ++x) {
      if (current.contains(x) || !is_p_power(g.element_order(x), p)) continue;
      std::vector<elem_t> ext = gens;
      ext.push_back(x);
      auto q = closure(g, ext, target);
      if (q && q->size() == target) {
        gens = std::move(ext);
        current = Subgroup{std::move(*q)};
        extended = true;
      }
    }
    // a p-subgroup below the Sylow order always has a one-step extension
    if (!extended) fail("Internal", "p-subgroup chain could not be extended");
  }
  return current;
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& s) {
  Subgroup out;
  for (elem_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (elem_t a : s.elements) {
      if (!s.contains(g.conj(x, a))) {
        ok = false;
        break;
      }
    }
    if (ok) out.elements.push_back(x);
  }
  return out;
}

Subgroup center(const FiniteGroup& g) {
  Subgroup out;
  for (elem_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (elem_t y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) out.elements.push_back(x);
  }
  return out;
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& s, elem_t x) {
  Subgroup out;
  out.elements.reserve(s.order());
  for (elem_t a : s.elements) out.elements.push_back(g.conj(x, a));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

bool is_normal_subgroup(const FiniteGroup& g, const Subgroup& s) {
  return normalizer(g, s).order() == g.order();
}

Subgroup image(const ElementMap& f, const Subgroup& s) {
  Subgroup out;
  out.elements.reserve(s.order());
  for (elem_t a : s.elements) out.elements.push_back(f[a]);
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& s) {
  const std::size_t n = s.order();
  Table t(n, std::vector<elem_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const elem_t prod = g.mul(s.elements[i], s.elements[j]);
      t[i][j] = static_cast<elem_t>(
          std::lower_bound(s.elements.begin(), s.elements.end(), prod) - s.elements.begin());
    }
  }
  return make_group_from_table(t, g.name().empty() ? std::string{} : "sub(" + g.name() + ")");
}

std::vector<std::size_t> order_profile(const FiniteGroup& g) {
  std::vector<std::size_t> hist(g.order() + 1, 0);
  for (elem_t x = 0; x < g.order(); ++x) ++hist[g.element_order(x)];
  return hist;
}

std::vector<elem_t> generating_set(const FiniteGroup& g) {
  std::vector<elem_t> gens;
  std::vector<elem_t> current{FiniteGroup::identity()};
  while (current.size() < g.order()) {
    std::vector<char> in(g.order(), 0);
    for (elem_t x : current) in[x] = 1;
    elem_t best = 0;
    std::size_t best_order = 0;
    for (elem_t x = 0; x < g.order(); ++x) {
      if (!in[x] && g.element_order(x) > best_order) {
        best = x;
        best_order = g.element_order(x);
      }
    }
    gens.push_back(best);
    current = closure(g, gens);
  }
  return gens;
}

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const ElementMap& f) {
  if (f.size() != from.order()) return false;
  for (elem_t x : f)
    if (x >= to.order()) return false;
  for (elem_t a = 0; a < from.order(); ++a)
    for (elem_t b = 0; b < from.order(); ++b)
      if (f[from.mul(a, b)] != to.mul(f[a], f[b])) return false;
  return true;
}

bool is_isomorphism(const FiniteGroup& from, const FiniteGroup& to, const ElementMap& f) {
  if (from.order() != to.order() || !is_homomorphism(from, to, f)) return false;
  std::vector<char> hit(to.order(), 0);
  for (elem_t x : f) {
    if (hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

void for_each_isomorphism(const FiniteGroup& g1, const FiniteGroup& g2,
                          const std::function<bool(const ElementMap&)>& visit,
                          const Limits& limits) {
  check_group_cap(g1, limits, "group order for isomorphism search");
  check_group_cap(g2, limits, "group order for isomorphism search");
  if (g1.order() != g2.order() || g1.is_abelian() != g2.is_abelian()) return;
  if (order_profile(g1) != order_profile(g2)) return;

  const std::vector<elem_t> gens = generating_set(g1);
  std::vector<std::vector<elem_t>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (elem_t y = 0; y < g2.order(); ++y)
      if (g2.element_order(y) == g1.element_order(gens[i])) candidates[i].push_back(y);

  constexpr elem_t unset = static_cast<elem_t>(-1);
  std::vector<elem_t> images(gens.size());
  ElementMap f(g1.order());
  std::vector<char> used(g2.order());

  // Rebuilds f on <gens[0..depth]> from the chosen images. Checking
  // f(x s) = f(x) f(s) for every reached x and generator s makes f a
  // homomorphism on that subgroup; `used` enforces injectivity.
  auto extend = [&](std::size_t depth) {
    std::fill(f.begin(), f.end(), unset);
    std::fill(used.begin(), used.end(), 0);
    f[0] = 0;
    used[0] = 1;
    std::vector<elem_t> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const elem_t x = queue[qi];
      for (std::size_t i = 0; i <= depth; ++i) {
        const elem_t z = g1.mul(x, gens[i]);
        const elem_t img = g2.mul(f[x], images[i]);
        if (f[z] == unset) {
          if (used[img]) return false;
          f[z] = img;
          used[img] = 1;
          queue.push_back(z);
        } else if (f[z] != img) {
          return false;
        }
      }
    }
    return true;
  };

  bool stop = false;
  std::function<void(std::size_t)> search = [&](std::size_t depth) {
    for (elem_t y : candidates[depth]) {
      if (stop) return;
      images[depth] = y;
      if (!extend(depth)) continue;
      if (depth + 1 == gens.size()) {
        if (!visit(f)) stop = true;
      } else {
        search(depth + 1);
      }
    }
  };
  if (gens.empty()) {
    // trivial group
    visit(ElementMap{0});
    return;
  }
  search(0);
}

std::optional<ElementMap> find_isomorphism(const FiniteGroup& g1, const FiniteGroup& g2,
                                           const Limits& limits) {
  std::optional<ElementMap> found;
  for_each_isomorphism(
      g1, g2,
      [&](const ElementMap& f) {
        found = f;
        return false;
      },
      limits);
  return found;
}

bool are_isomorphic(const FiniteGroup& g1, const FiniteGroup& g2, const Limits& limits) {
  return find_isomorphism(g1, g2, limits).has_value();
}

std::vector<ElementMap> automorphisms(const FiniteGroup& g, const Limits& limits) {
  std::vector<ElementMap> out;
  for_each_isomorphism(
      g, g,
      [&](const ElementMap& f) {
        out.push_back(f);
        if (out.size() > limits.max_automorphisms)
          cap_exceeded("number of automorphisms", limits.max_automorphisms, out.size());
        return true;
      },
      limits);
  // identity first
  auto is_identity = [](const ElementMap& f) {
    for (elem_t i = 0; i < f.size(); ++i)
      if (f[i] != i) return false;
    return true;
  };
  auto it = std::find_if(out.begin(), out.end(), is_identity);
  if (it != out.end()) std::rotate(out.begin(), it, it + 1);
  return out;
}

}  // namespace gpd
