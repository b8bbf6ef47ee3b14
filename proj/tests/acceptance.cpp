// Acceptance suite: one PASS/FAIL line per criterion. Run with a criterion
// number (1-8) to check just that one, or with no argument for all of them.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "gpd/catalog.hpp"
#include "gpd/classify.hpp"
#include "gpd/cli.hpp"
#include "gpd/error.hpp"
#include "gpd/json_io.hpp"
#include "gpd/numeric.hpp"
#include "gpd/sylow.hpp"
#include "oracles.hpp"

using namespace gpd;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json cli_json(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out, err;
  run_cli(args, in, out, err);
  return json::parse(out.str());
}

Groupoid connected(std::size_t d, FiniteGroup g) {
  std::vector<std::string> ids;
  for (std::size_t i = 1; i <= d; ++i) ids.push_back("e" + std::to_string(i));
  return make_connected(std::move(ids), std::move(g));
}

std::vector<FiniteGroup> catalog_up_to(std::size_t limit) {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= limit; ++n) out.push_back(cyclic_group(n));
  for (std::size_t n = 2; 2 * n <= limit; ++n) out.push_back(dihedral_group(n));
  for (std::size_t n = 2; 4 * n <= limit; ++n) out.push_back(dicyclic_group(n));
  for (std::size_t n = 3; n <= 4; ++n) out.push_back(symmetric_group(n));
  out.push_back(alternating_group(4));
  out.push_back(klein_group());
  for (std::size_t m = 1; m <= kSmallGroupsMaxOrder; ++m)
    for (auto& g : small_groups(m)) out.push_back(std::move(g));
  const std::vector<std::vector<std::uint64_t>> factors = {{2, 2, 2}, {4, 4}, {2, 2, 2, 2}, {3, 3, 3},
                                                           {2, 2, 2, 2, 2, 2}, {2, 4, 4}, {3, 9}};
  for (const auto& f : factors) {
    std::uint64_t n = 1;
    for (auto x : f) n *= x;
    if (n <= limit) out.push_back(abelian_group(f));
  }
  out.push_back(direct_product(dihedral_group(4), cyclic_group(2)));
  out.push_back(direct_product(symmetric_group(3), cyclic_group(3)));
  return out;
}

// Disjoint unions of A_d x G (G from small_groups) of total order n, one per
// multiset of classes.
void unions_of_order(std::size_t n, std::vector<Groupoid>& out) {
  struct Kind {
    std::size_t d;
    FiniteGroup g;
  };
  std::vector<Kind> kinds;
  for (std::size_t m = 1; m <= kSmallGroupsMaxOrder && m <= n; ++m)
    for (const auto& g : small_groups(m))
      for (std::size_t d = 1; d * d * m <= n; ++d) kinds.push_back({d, g});
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t from) {
    if (left == 0) {
      std::vector<Groupoid> parts;
      std::size_t label = 0;
      for (auto k : pick) {
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < kinds[k].d; ++i) ids.push_back("e" + std::to_string(++label));
        parts.push_back(make_connected(std::move(ids), kinds[k].g));
      }
      out.push_back(disjoint_union(parts));
      return;
    }
    for (std::size_t k = from; k < kinds.size(); ++k) {
      const auto q = kinds[k].d * kinds[k].d * kinds[k].g.order();
      if (q > left) continue;
      pick.push_back(k);
      rec(left - q, k);
      pick.pop_back();
    }
  };
  rec(n, 0);
}

// Subgroupoid families larger than this are left out of the index suite.
constexpr std::uint64_t kPairsPerGroupoid = 256;

struct Suite {
  std::vector<Groupoid> groupoids;
  std::size_t skipped = 0;
};

// Groupoids of order <= 24 with catalog base groups for the index and
// Lagrange suites: every one up to the catalog bound, then the ones beyond it
// whose subgroupoid family stays under the cap.
const Suite& index_suite() {
  static const Suite suite = [] {
    Suite s;
    for (std::size_t n = 1; n <= kSmallGroupsMaxOrder; ++n)
      for (auto& g : enumerate_groupoids(n)) s.groupoids.push_back(std::move(g));
    std::vector<Groupoid> larger;
    for (std::size_t n = kSmallGroupsMaxOrder + 1; n <= 24; ++n) unions_of_order(n, larger);
    for (const auto& g : catalog_up_to(24))
      if (g.order() > kSmallGroupsMaxOrder) larger.push_back(connected(1, g));
    for (auto& g : larger) {
      if (count_subgroupoids(g, false) <= kPairsPerGroupoid)
        s.groupoids.push_back(std::move(g));
      else
        ++s.skipped;
    }
    return s;
  }();
  return suite;
}

Outcome criterion_1() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::uint64_t expected[] = {1, 2, 3, 7, 8, 16};
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = cli_json({"classify", "--order", std::to_string(n)});
    const auto got = r.at("count").get<std::uint64_t>();
    o.require(got == expected[n - 1], "order " + std::to_string(n) + ": classify gives " + std::to_string(got) +
                                          ", expected " + std::to_string(expected[n - 1]));
    const auto classes = enumerate_groupoid_classes(n);
    o.require(classes.size() == got, "order " + std::to_string(n) + ": atlas size differs from count");
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = i + 1; j < classes.size(); ++j)
        o.require(!are_isomorphic_groupoids(classes[i].groupoid, classes[j].groupoid),
                  "order " + std::to_string(n) + ": isomorphic representatives");
  }
  const double s = seconds_since(t0);
  o.require(s < 1.0, "runtime " + std::to_string(s) + " s");
  return o;
}

Outcome criterion_2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto g = connected(3, dihedral_group(3));
  struct Row {
    std::size_t d;
    std::uint64_t p, count;
    std::size_t order;
  };
  const Row rows[] = {{1, 3, 3, 3}, {1, 2, 9, 2}, {2, 3, 3, 12}, {2, 2, 9, 8}, {3, 3, 1, 27}, {3, 2, 3, 18}};
  for (const auto& r : rows) {
    const std::string tag = "(" + std::to_string(r.d) + "," + std::to_string(r.p) + ")";
    const auto fam = enumerate_dp_sylow(g, r.d, r.p);
    o.require(fam.members.size() == r.count, tag + " enumerated " + std::to_string(fam.members.size()));
    o.require(fam.N * binomial(3, r.d) == r.count, tag + " closed form " + std::to_string(fam.N * binomial(3, r.d)));
    o.require(fam.ok(), tag + " family checks");
    // independent count: d-subsets times subgroups of the Sylow order found by subset scan
    const auto [e, b] = split_prime_power(6, r.p);
    std::size_t sylow_subsets = 0;
    for (const auto& s : oracle::subgroups_by_subsets(dihedral_group(3))) sylow_subsets += s.size() == ipow(r.p, e);
    o.require(sylow_subsets * binomial(3, r.d) == r.count, tag + " subset oracle");
    for (const auto& h : fam.members) o.require(h.order() == r.order, tag + " member order");
  }
  const auto three = enumerate_dp_sylow(g, 3, 3).members.at(0);
  o.require(is_normal(g, three), "wide 3-Sylow not normal");
  o.require(is_characteristic(g, three), "wide 3-Sylow not characteristic");
  for (const auto& h : enumerate_dp_sylow(g, 3, 2).members) o.require(!is_normal(g, h), "a wide 2-Sylow is normal");
  const double s = seconds_since(t0);
  o.require(s < 5.0, "runtime " + std::to_string(s) + " s");
  return o;
}

// Number of subgroups of prime order p, counted from element orders on the table.
std::size_t prime_order_subgroups(const FiniteGroup& g, std::uint64_t p) {
  std::size_t elements = 0;
  for (elem_t x = 1; x < g.order(); ++x) {
    elem_t y = x;
    std::size_t k = 1;
    while (y != 0) {
      y = g.mul(y, x);
      ++k;
    }
    elements += k == p;
  }
  return elements / (p - 1);
}

Outcome criterion_3() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto z105 = connected(7, cyclic_group(105));
  const auto f1 = enumerate_DP_sylow(z105, {1, 3, 3}, {3, 5, 7}, false);
  o.require(f1.count == 140, "Z105: n_{D,P} = " + std::to_string(f1.count));
  o.require(f1.N == std::vector<std::uint64_t>{1, 1, 1}, "Z105: N_i not all 1");
  o.require(f1.ok(), "Z105: family checks");

  const elem_t gens[] = {1};
  const ElementMap action[] = {cyclic_multiplier(35, 11)};
  const auto base = semidirect_product(cyclic_group(35), cyclic_group(3), gens, action);
  o.require(!base.is_abelian(), "Z35 x| Z3 is abelian");
  const std::uint64_t n3 = prime_order_subgroups(base, 3), n5 = prime_order_subgroups(base, 5),
                      n7 = prime_order_subgroups(base, 7);
  o.require(n3 == 7 && n5 == 1 && n7 == 1, "table counts n3, n5, n7 = " + std::to_string(n3) + ", " +
                                               std::to_string(n5) + ", " + std::to_string(n7));
  const auto f2 = enumerate_DP_sylow(connected(7, base), {1, 3, 3}, {3, 5, 7}, false);
  o.require(f2.count == 980, "Z35 x| Z3: n_{D,P} = " + std::to_string(f2.count));
  o.require(f2.N == std::vector<std::uint64_t>{n3, n5, n7}, "Z35 x| Z3: N_i differ from table counts");
  o.require(f2.ok(), "Z35 x| Z3: family checks");
  const double s = seconds_since(t0);
  o.require(s < 30.0, "runtime " + std::to_string(s) + " s");
  return o;
}

struct SuiteStats {
  std::size_t groupoids = 0, skipped = 0, pairs = 0, wide = 0, corollaries = 0;
};

Outcome criterion_4(SuiteStats& stats) {
  Outcome o;
  const auto t0 = Clock::now();
  stats.skipped = index_suite().skipped;
  for (const auto& g : index_suite().groupoids) {
    ++stats.groupoids;
    const oracle::FlatTable t(g);
    for (const auto& h : enumerate_subgroupoids(g, false)) {
      ++stats.pairs;
      const auto bf = index_bruteforce(g, h);
      const auto direct = oracle::right_coset_count(t, oracle::mask_of(h.members()));
      const auto formula = index_formula(g, h);
      if (formula != bf.right || bf.right != direct || bf.left != bf.right) {
        o.require(false, "index mismatch at order " + std::to_string(g.order()) + ": formula " +
                             std::to_string(formula) + ", cosets " + std::to_string(direct));
        continue;
      }
      for (std::size_t x = 0; x < g.order(); ++x) {
        const auto e = g.element(x);
        const auto cc = coset_cardinality(h, e);
        // delta * |H_r(x)|, with delta the identity count of the block holding r(x)
        const auto part = h.part_of(e.comp, e.dst);
        const std::size_t want = part ? h.parts()[*part].d() * h.isotropy_at(e.comp, e.dst)->order() : 0;
        if (!cc.agree() || cc.actual != want) {
          o.require(false, "coset lemma fails at order " + std::to_string(g.order()));
          break;
        }
      }
    }
  }
  o.require(stats.pairs >= 10000, "only " + std::to_string(stats.pairs) + " pairs");
  const double s = seconds_since(t0);
  o.require(s < 120.0, "runtime " + std::to_string(s) + " s");
  return o;
}

Outcome criterion_5(SuiteStats& stats) {
  Outcome o;
  for (const auto& g : index_suite().groupoids) {
    for (const auto& h : enumerate_subgroupoids(g, true)) {
      ++stats.wide;
      const auto r = lagrange_identity_check(g, h);
      // right-hand side rebuilt from the blocks
      std::uint64_t rhs = 0;
      for (std::uint32_t c = 0; c < g.component_count(); ++c)
        for (const auto& p : h.parts())
          if (p.comp == c)
            rhs += g.component(c).d() * (g.component(c).m() / p.m()) * p.d() * p.m();
      o.require(rhs == g.order() && r.identity.pass, "identity fails at order " + std::to_string(g.order()));
      const auto& f = h.parts().front();
      bool uniform = true;
      for (const auto& p : h.parts()) uniform &= p.d() == f.d() && p.m() == f.m();
      if (uniform) {
        ++stats.corollaries;
        const auto idx = index_bruteforce(g, h).right;
        o.require(r.corollary && r.corollary->pass && idx * f.d() * f.m() == g.order(),
                  "corollary fails at order " + std::to_string(g.order()));
      }
    }
  }
  return o;
}

Outcome criterion_6() {
  Outcome o;
  for (const auto& g : catalog_up_to(64)) {
    for (auto p : prime_divisors(g.order())) {
      const std::string tag = g.name() + " p=" + std::to_string(p);
      const auto syl = sylow_subgroups_of_group(g, p);
      const auto b = split_prime_power(g.order(), p).second;
      o.require(syl.size() % p == 1 % p, tag + ": count not 1 mod p");
      o.require(b % syl.size() == 0, tag + ": count does not divide the p-free part");
      std::set<std::vector<elem_t>> orbit;
      for (elem_t x = 0; x < g.order(); ++x) orbit.insert(conjugate(g, syl.front(), x).elements);
      std::set<std::vector<elem_t>> all;
      for (const auto& s : syl) all.insert(s.elements);
      o.require(orbit == all, tag + ": Sylow subgroups not one conjugacy class");
    }
  }
  return o;
}

Outcome criterion_7() {
  Outcome o;
  std::vector<Groupoid> gs = index_suite().groupoids;
  for (std::size_t n = 1; n <= kSmallGroupsMaxOrder; ++n)
    for (auto& g : enumerate_groupoids(n)) gs.push_back(std::move(g));
  for (const auto& g : catalog_up_to(64))
    for (std::size_t d = 1; d <= 7 && d * d * g.order() <= 4096; ++d) gs.push_back(connected(d, g));
  std::size_t squarefree = 0;
  for (const auto& g : gs) {
    if (!g.is_connected()) continue;
    o.require(corollary_squarefree_check(g), "library check fails at order " + std::to_string(g.order()));
    if (is_squarefree(g.order())) {
      ++squarefree;
      o.require(g.identity_count() == 1, "squarefree order " + std::to_string(g.order()) + " with " +
                                             std::to_string(g.identity_count()) + " identities");
    }
  }
  o.require(squarefree > 0, "no squarefree connected groupoids generated");
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const auto g = connected(3, symmetric_group(2));
  const auto h = subgroupoid_from_json(
      g, json::parse(R"({"components":[{"identities":["e1","e2"],"subgroup":[0,1]},{"identities":["e3"],"subgroup":[0]}]})"));
  std::set<std::size_t> sizes;
  for (std::size_t x = 0; x < g.order(); ++x) sizes.insert(coset(h, g.element(x), Side::left).members.size());
  o.require(sizes.count(1) == 1, "no left coset of size 1");
  o.require(sizes.count(4) == 1, "no left coset of size 4");

  const auto k = subgroupoid_from_json(g, json::parse(R"({"components":[{"identities":["e1","e2"],"subgroup":[0,1]}]})"));
  bool found = false;
  for (std::size_t x = 0; x < g.order() && !found; ++x) {
    const auto e = g.element(x);
    const auto left = coset(k, e, Side::left).members;
    found = coset(k, e, Side::right).members.empty() && std::find(left.begin(), left.end(), x) != left.end();
  }
  o.require(found, "no element with an empty right coset lying in its own left coset");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  if (only < 0 || only > 8) {
    std::cerr << "usage: acceptance [1-8]\n";
    return 2;
  }
  SuiteStats stats;
  const std::function<Outcome()> criteria[] = {
      criterion_1, criterion_2, criterion_3, [&] { return criterion_4(stats); },
      [&] { return criterion_5(stats); }, criterion_6, criterion_7, criterion_8};
  bool all = true;
  for (int i = 1; i <= 8; ++i) {
    if (only && i != only) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i - 1]();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds_since(t0));
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " (" << timing;
    if (i == 4) std::cout << ", " << stats.groupoids << " groupoids, " << stats.pairs << " pairs, "
                          << stats.skipped << " groupoids over the cap";
    if (i == 5) std::cout << ", " << stats.wide << " wide, " << stats.corollaries << " corollary cases";
    std::cout << ")\n";
    std::size_t shown = 0;
    for (const auto& n : o.notes)
      if (shown++ < 10) std::cout << "  " << n << "\n";
    if (o.notes.size() > 10) std::cout << "  ... " << o.notes.size() - 10 << " more\n";
    all &= o.pass;
  }
  return all ? 0 : 1;
}
