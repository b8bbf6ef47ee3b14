#include <doctest.h>

#include <algorithm>
#include <set>

#include "gpd/catalog.hpp"
#include "gpd/error.hpp"
#include "gpd/json_io.hpp"
#include "gpd/subgroupoid.hpp"
#include "oracles.hpp"

using namespace gpd;
using nlohmann::json;

namespace {

std::string error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

Groupoid a3_s2() { return make_connected({"e1", "e2", "e3"}, symmetric_group(2)); }

std::set<std::uint64_t> masks(const std::vector<Subgroupoid>& hs) {
  std::set<std::uint64_t> out;
  for (const auto& h : hs) out.insert(oracle::mask_of(h.members()));
  return out;
}

std::vector<Groupoid> small_family() {
  return {
      make_connected({"a", "b"}, cyclic_group(1)),
      make_connected({"a", "b", "c"}, cyclic_group(1)),
      make_connected({"a", "b"}, cyclic_group(2)),
      make_connected({"a", "b"}, cyclic_group(3)),
      make_connected({"a", "b"}, klein_group()),
      make_connected({"a"}, dihedral_group(3)),
      a3_s2(),
      disjoint_union(std::vector<Groupoid>{make_connected({"p"}, cyclic_group(2)),
                                           make_connected({"q", "r"}, cyclic_group(1))}),
      disjoint_union(std::vector<Groupoid>{make_connected({"p"}, cyclic_group(3)),
                                           make_connected({"q", "r"}, cyclic_group(2))}),
  };
}

}  // namespace

TEST_CASE("enumerate_subgroupoids matches the subset scan") {
  for (const auto& g : small_family()) {
    if (g.order() > 20) continue;
    CAPTURE(g.order());
    const auto all = enumerate_subgroupoids(g, false);
    CHECK(masks(all).size() == all.size());
    CHECK(masks(all) == oracle::subgroupoids_by_subsets(g));
    CHECK(count_subgroupoids(g, false) == all.size());
  }
}

TEST_CASE("enumerate_subgroupoids matches closure search on larger groupoids") {
  const std::vector<Groupoid> gs = {
      a3_s2(), make_connected({"a", "b"}, dihedral_group(3)),
      make_connected({"a", "b", "c"}, cyclic_group(3)),
      disjoint_union(std::vector<Groupoid>{make_connected({"p"}, klein_group()),
                                           make_connected({"q", "r"}, cyclic_group(2))})};
  for (const auto& g : gs) {
    CAPTURE(g.order());
    const auto all = enumerate_subgroupoids(g, false);
    CHECK(masks(all) == oracle::subgroupoids_by_closure(g));
    const auto wide = enumerate_subgroupoids(g, true);
    std::size_t want = 0;
    for (const auto& h : all) want += h.is_wide();
    CHECK(wide.size() == want);
    CHECK(count_subgroupoids(g, true) == want);
    for (const auto& h : wide) CHECK(h.is_wide());
  }
}

TEST_CASE("twisted blocks are subgroupoids too") {
  // A_2 x Z2: the block {a, b} with trivial isotropy and transversal x_b = 1
  const auto g = make_connected({"a", "b"}, cyclic_group(2));
  SubComponent sc;
  sc.identities = {0, 1};
  sc.isotropy = trivial_subgroup();
  sc.transversal = {0, 1};
  const auto h = subgroupoid_from_parts(g, {sc});
  CHECK(h.order() == 4);
  CHECK(h.contains(Element{0, 0, 1, 1}));
  CHECK_FALSE(h.contains(Element{0, 0, 1, 0}));
  CHECK(oracle::is_subgroupoid_mask(oracle::FlatTable(g), oracle::mask_of(h.members())));
}

TEST_CASE("subgroupoid_from_parts canonicalizes the base point") {
  const auto g = make_connected({"a", "b", "c"}, dihedral_group(3));
  SubComponent sc;
  sc.identities = {2, 1};
  sc.isotropy = make_subgroup(dihedral_group(3), {0, 3});
  sc.transversal = {0, 1};
  const auto h = subgroupoid_from_parts(g, {sc});
  REQUIRE(h.parts().size() == 1);
  CHECK(h.parts()[0].identities == std::vector<std::uint32_t>{1, 2});
  CHECK(h.parts()[0].transversal[0] == 0);
  CHECK(oracle::is_subgroupoid_mask(oracle::FlatTable(g), oracle::mask_of(h.members())));
  // rebuilding from the member list gives the same blocks
  const auto again = validate_subgroupoid(g, h.elements());
  CHECK(again == h);
  CHECK(again.parts() == h.parts());
}

TEST_CASE("validate_subgroupoid errors") {
  const auto g = a3_s2();
  CHECK(error_kind([&] { validate_subgroupoid(g, std::vector<Element>{}); }) == "Empty");
  // (e1 -> e2) alone composes with nothing, so closure holds but identities are missing
  const std::vector<Element> arrow = {Element{0, 0, 1, 0}};
  CHECK(error_kind([&] { validate_subgroupoid(g, arrow); }) == "MissingIdentityOf");
  const std::vector<Element> arrow_ids = {Element{0, 0, 1, 0}, Element{0, 0, 0, 0}, Element{0, 1, 1, 0}};
  CHECK(error_kind([&] { validate_subgroupoid(g, arrow_ids); }) == "MissingInverse");
  // an isotropy element without its identity
  const std::vector<Element> loop = {Element{0, 0, 0, 1}};
  CHECK(error_kind([&] { validate_subgroupoid(g, loop); }) == "NotClosed");
  const std::vector<Element> closed_no_id = {Element{0, 0, 0, 1}, Element{0, 0, 0, 0}};
  CHECK_NOTHROW(validate_subgroupoid(g, closed_no_id));
  const std::vector<std::string> bad_id = {"0/0/0/9"};
  CHECK(error_kind([&] { validate_subgroupoid(g, bad_id); }) == "UnknownElement");
  const std::vector<std::string> by_label = {"e1", "e3"};
  CHECK(validate_subgroupoid(g, by_label).order() == 2);

  SubComponent sc;
  sc.identities = {0, 7};
  sc.isotropy = trivial_subgroup();
  CHECK(error_kind([&] { subgroupoid_from_parts(g, {sc}); }) == "UnknownIdentity");
  sc.identities = {0};
  sc.isotropy.elements = {1};
  CHECK(error_kind([&] { subgroupoid_from_parts(g, {sc}); }) == "NotASubgroup");
  CHECK(error_kind([&] { subgroupoid_from_parts(g, {}); }) == "Empty");
}

TEST_CASE("coset cardinality lemma and index formula against brute force") {
  std::size_t pairs = 0;
  for (const auto& g : small_family()) {
    const oracle::FlatTable t(g);
    for (const auto& h : enumerate_subgroupoids(g, false)) {
      ++pairs;
      const auto hm = oracle::mask_of(h.members());
      const auto direct = oracle::right_coset_count(t, hm);
      const auto bf = index_bruteforce(g, h);
      CHECK(bf.right == direct);
      CHECK(bf.left == bf.right);
      CHECK(index_formula(g, h) == direct);
      if (h.is_wide()) CHECK(index_formula_as_stated(g, h) == direct);
      for (std::size_t x = 0; x < g.order(); ++x) {
        const auto e = g.element(x);
        const auto cc = coset_cardinality(h, e);
        CHECK(cc.agree());
        std::uint64_t m = 0;
        for (std::size_t a = 0; a < t.n; ++a)
          if ((hm >> a & 1) && t.at(a, x) >= 0) m |= std::uint64_t{1} << t.at(a, x);
        CHECK(oracle::mask_of(coset(h, e, Side::right).members) == m);
      }
    }
  }
  CHECK(pairs > 100);
}

TEST_CASE("index formula as stated differs for non-wide subgroupoids") {
  // In A_3 x S_2, the block {e1, e2} with full isotropy: cosets are counted
  // per parent identity, so the weight is k = 3 rather than 2.
  const auto g = a3_s2();
  const auto k = subgroupoid_from_json(g, json::parse(R"({"components":[{"identities":["e1","e2"],"subgroup":[0,1]}]})"));
  const auto bf = index_bruteforce(g, k);
  CHECK(bf.right == 3);
  CHECK(index_formula(g, k) == 3);
  CHECK(index_formula_as_stated(g, k) == 2);
}

TEST_CASE("worked coset example in A_3 x S_2") {
  const auto g = a3_s2();
  const auto h = subgroupoid_from_json(
      g, json::parse(R"({"components":[{"identities":["e1","e2"],"subgroup":[0,1]},{"identities":["e3"],"subgroup":[0]}]})"));
  CHECK(h.is_wide());
  CHECK(h.order() == 9);
  std::set<std::size_t> left_sizes;
  for (std::size_t x = 0; x < g.order(); ++x) left_sizes.insert(coset(h, g.element(x), Side::left).members.size());
  CHECK(left_sizes.count(1) == 1);
  CHECK(left_sizes.count(4) == 1);
  const auto lr = lagrange_identity_check(g, h);
  CHECK(lr.identity.pass);
  CHECK(lr.identity.lhs == 18);
  CHECK_FALSE(lr.corollary.has_value());
  CHECK(index_formula(g, h) == index_bruteforce(g, h).right);

  const auto k = subgroupoid_from_json(g, json::parse(R"({"components":[{"identities":["e1","e2"],"subgroup":[0,1]}]})"));
  const Element x{0, 1, 2, 0};
  CHECK(coset(k, x, Side::right).members.empty());
  const auto left = coset(k, x, Side::left).members;
  CHECK(std::find(left.begin(), left.end(), g.index(x)) != left.end());
  CHECK(error_kind([&] { lagrange_identity_check(g, k); }) == "NotWide");
}

TEST_CASE("order report") {
  const auto g = make_connected({"a", "b"}, dihedral_group(3));
  for (const auto& h : enumerate_subgroupoids(g, false)) {
    const auto r = lagrange_order_report(g, h);
    CHECK(r.ok());
    std::size_t total = 0;
    for (const auto& p : r.parts) total += p.d * p.d * p.m;
    CHECK(total == h.order());
    if (h.is_connected() && r.divides) CHECK(*r.divides == (g.order() % h.order() == 0));
  }
}

TEST_CASE("Lagrange identity over every wide subgroupoid") {
  for (const auto& g : small_family()) {
    for (const auto& h : enumerate_subgroupoids(g, true)) {
      const auto r = lagrange_identity_check(g, h);
      CHECK(r.identity.pass);
      bool one_block_per_component = true;
      for (std::size_t i = 1; i < h.parts().size(); ++i)
        one_block_per_component &= h.parts()[i].comp != h.parts()[i - 1].comp;
      if (one_block_per_component) CHECK(r.identity_as_stated.pass);
      if (r.corollary) CHECK(r.corollary->pass);
    }
  }
}

TEST_CASE("whole and identity subgroupoids") {
  const auto g = a3_s2();
  CHECK(whole_subgroupoid(g).order() == g.order());
  CHECK(identities_subgroupoid(g).order() == 3);
  // one right coset per identity: Gx depends only on d(x)
  CHECK(index_formula(g, whole_subgroupoid(g)) == 3);
  CHECK(index_bruteforce(g, whole_subgroupoid(g)).right == 3);
  CHECK(index_bruteforce(g, identities_subgroupoid(g)).right == 18);
}

TEST_CASE("caps") {
  Limits tight;
  tight.max_groupoid_order = 10;
  CHECK(error_kind([&] { enumerate_subgroupoids(a3_s2(), false, tight); }) == "CapExceeded");
  CHECK(error_kind([&] { index_bruteforce(a3_s2(), whole_subgroupoid(a3_s2()), tight); }) == "CapExceeded");
  Limits few;
  few.max_enumerated = 5;
  CHECK(error_kind([&] { enumerate_subgroupoids(a3_s2(), false, few); }) == "CapExceeded");
}

TEST_CASE("subgroupoid JSON round trip") {
  const auto g = make_connected({"a", "b", "c"}, dihedral_group(3));
  for (const auto& h : enumerate_subgroupoids(g, false)) {
    const auto j = subgroupoid_to_json(h);
    CHECK(subgroupoid_from_json(g, json{{"components", j.at("components")}}) == h);
    CHECK(subgroupoid_from_json(g, json{{"elements", j.at("elements")}}) == h);
  }
}
