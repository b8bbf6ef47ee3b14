#include "gpd/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpd/classify.hpp"
#include "gpd/error.hpp"
#include "gpd/json_io.hpp"
#include "gpd/numeric.hpp"
#include "gpd/subgroupoid.hpp"
#include "gpd/sylow.hpp"

namespace gpd {

using nlohmann::json;

namespace {

struct Options {
  bool pretty = false;
  std::size_t max_order = Limits{}.max_groupoid_order;
  std::size_t max_group = Limits{}.max_group_order;

  std::string input;
  std::string sub;
  std::string element;
  std::string side = "right";

  std::optional<std::size_t> d;
  std::optional<std::uint64_t> p;
  std::optional<unsigned> n;
  std::vector<std::size_t> D;
  std::vector<std::uint64_t> P;
  bool formula_only = false;
  bool witnesses = false;

  std::size_t order = 0;
  std::string table;
  bool catalog = false;

  Limits limits() const {
    Limits l;
    l.max_groupoid_order = max_order;
    l.max_group_order = max_group;
    return l;
  }
};

json read_json(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(path);
    if (!f) usage_error("BadInput", "cannot open " + path, {{"path", path}});
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    usage_error("BadJson", std::string("malformed JSON: ") + e.what(), {{"path", path}});
  }
}

json component_summary(const Groupoid& g) {
  json comps = json::array();
  for (const auto& c : g.components())
    comps.push_back({{"identities", c.identities}, {"d", c.d()}, {"m", c.m()},
                     {"group", c.base.name()}, {"order", c.order()}});
  return comps;
}

Element resolve_element(const Groupoid& g, const std::string& id) {
  if (auto ref = g.find_identity(id)) return g.identity_element(ref->comp, ref->local);
  return g.parse_element_id(id);
}

json ids_of(const Groupoid& g, const std::vector<std::size_t>& flats) {
  json out = json::array();
  for (auto f : flats) out.push_back(g.element_id(g.element(f)));
  return out;
}

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

json run_check(const Options& o, std::istream& in) {
  const json j = read_json(o.input, in);
  Groupoid g = [&] {
    if (j.is_object() && j.contains("raw")) {
      const CheckedRaw checked = validate_raw(raw_from_json(j.at("raw")));
      return structure(checked).groupoid;
    }
    return groupoid_from_json(j);
  }();
  return {{"valid", true},
          {"order", g.order()},
          {"identities", g.identity_count()},
          {"component_count", g.component_count()},
          {"structure", groupoid_to_json(g)}};
}

json run_info(const Options& o, std::istream& in) {
  const Groupoid g = groupoid_from_json(read_json(o.input, in));
  std::uint64_t sum = 0, iso = 0;
  for (const auto& c : g.components()) {
    sum += c.order();
    iso += c.d() * c.m();
  }
  json out = {{"order", g.order()},
              {"identities", g.identity_count()},
              {"connected", g.is_connected()},
              {"components", component_summary(g)},
              {"isotropy_order", iso},
              {"order_check", to_json(make_check("order", g.order(), sum))}};
  if (g.is_connected()) out["squarefree_corollary"] = corollary_squarefree_check(g);
  return out;
}

json run_cosets(const Options& o, std::istream& in) {
  const Groupoid g = groupoid_from_json(read_json(o.input, in));
  const Subgroupoid h = subgroupoid_from_json(g, read_json(o.sub, in));
  const Side side = o.side == "left" ? Side::left : Side::right;

  auto one = [&](const Element& x) {
    const Coset c = coset(h, x, side);
    json r = {{"representative", g.element_id(x)},
              {"side", o.side},
              {"members", ids_of(g, c.members)},
              {"size", c.members.size()}};
    if (side == Side::right) {
      const auto card = coset_cardinality(h, x);
      r["formula"] = card.formula;
      r["agree"] = card.agree();
    }
    return r;
  };
  if (!o.element.empty()) return {{"cosets", json::array({one(resolve_element(g, o.element))})}};

  if (g.order() > o.max_order) cap_exceeded("groupoid order for coset listing", o.max_order, g.order());
  std::vector<std::vector<std::size_t>> seen;
  json all = json::array();
  for (std::size_t f = 0; f < g.order(); ++f) {
    const Element x = g.element(f);
    auto members = coset(h, x, side).members;
    if (members.empty() || std::find(seen.begin(), seen.end(), members) != seen.end()) continue;
    seen.push_back(std::move(members));
    all.push_back(one(x));
  }
  return {{"count", all.size()}, {"cosets", all}};
}

json run_index(const Options& o, std::istream& in) {
  const Groupoid g = groupoid_from_json(read_json(o.input, in));
  const Subgroupoid h = subgroupoid_from_json(g, read_json(o.sub, in));
  const auto formula = index_formula(g, h);
  const auto brute = index_bruteforce(g, h, o.limits());
  return {{"formula", formula},
          {"formula_as_stated", index_formula_as_stated(g, h)},
          {"bruteforce", brute.right},
          {"left_bruteforce", brute.left},
          {"agree", formula == brute.right && brute.right == brute.left}};
}

json run_lagrange(const Options& o, std::istream& in) {
  const Groupoid g = groupoid_from_json(read_json(o.input, in));
  const Subgroupoid h = subgroupoid_from_json(g, read_json(o.sub, in));
  const OrderReport r = lagrange_order_report(g, h);
  json parts = json::array();
  for (const auto& p : r.parts) parts.push_back({{"d", p.d}, {"m", p.m}, {"parent_m", p.parent_m}});
  json out = {{"wide", h.is_wide()},
              {"order_report", {{"parts", parts}, {"checks", checks_json(r.checks)}, {"ok", r.ok()}}}};
  out["order_report"]["divides"] = r.divides ? json(*r.divides) : json(nullptr);
  if (h.is_wide()) {
    const LagrangeReport l = lagrange_identity_check(g, h);
    json id = {{"identity", to_json(l.identity)},
               {"identity_as_stated", to_json(l.identity_as_stated)},
               {"ok", l.ok()}};
    id["corollary"] = l.corollary ? to_json(*l.corollary) : json(nullptr);
    out["identity"] = std::move(id);
  } else {
    out["identity"] = nullptr;
  }
  return out;
}

json run_sylow(const Options& o, std::istream& in) {
  const Groupoid g = groupoid_from_json(read_json(o.input, in));
  const bool single = o.d.has_value() || o.p.has_value();
  const bool profile = !o.D.empty() || !o.P.empty();
  if (single == profile) usage_error("BadParams", "give either --d and --p or --D and --P");
  if (single && (!o.d || !o.p)) usage_error("BadParams", "--d and --p go together");
  if (profile && o.D.size() != o.P.size())
    usage_error("BadParams", "--D and --P need the same length", {{"D", o.D}, {"P", o.P}});
  for (auto p : single ? std::vector<std::uint64_t>{*o.p} : o.P)
    if (!is_prime(p)) usage_error("NotPrime", std::to_string(p) + " is not prime", {{"p", p}});
  const Limits limits = o.limits();

  std::uint64_t total = 0;
  json comps = json::array();
  for (std::uint32_t c = 0; c < g.component_count(); ++c) {
    const auto& cc = g.component(c);
    const Groupoid part = make_connected(cc.identities, cc.base);
    json r = {{"component", c}, {"k", cc.d()}, {"group", cc.base.name()}};
    const std::size_t need = single ? *o.d : std::accumulate(o.D.begin(), o.D.end(), std::size_t{0});
    if (need < 1 || need > cc.d()) {
      r["count"] = 0;
      r["skipped"] = "ProfileInfeasible";
      comps.push_back(std::move(r));
      continue;
    }
    if (single && o.n) {
      const Subgroupoid h = construct_dp_subgroupoid(part, *o.d, *o.p, *o.n);
      r["constructed"] = subgroupoid_to_json(h);
      r["order"] = h.order();
      r["divides_parent"] = g.order() % h.order() == 0;
      r["count"] = 0;
    } else if (single) {
      const DPSylowFamily fam = enumerate_dp_sylow(part, *o.d, *o.p, limits);
      r["count"] = fam.members.size();
      r["formula"] = {{"N", fam.N}, {"binom", fam.binom}, {"value", fam.formula}};
      r["order"] = fam.members.front().order();
      r["checks"] = checks_json(fam.checks);
      r["ok"] = fam.ok();
      if (o.witnesses) {
        json w = json::array();
        for (const auto& h : fam.members) w.push_back(subgroupoid_to_json(h));
        r["witnesses"] = std::move(w);
      }
      total += fam.members.size();
    } else {
      const DPFamily fam = enumerate_DP_sylow(part, o.D, o.P, !o.formula_only, limits);
      r["count"] = fam.count;
      r["formula"] = {{"multinomial", fam.multinomial},
                      {"N", fam.N},
                      {"product", fam.formula},
                      {"repetition", fam.repetition},
                      {"normalizer_product", fam.normalizer_product}};
      r["enumerated"] = fam.enumerated ? json(*fam.enumerated) : json(nullptr);
      r["orbit_covers"] = fam.orbit_covers ? json(*fam.orbit_covers) : json(nullptr);
      r["isotropy_normal"] = fam.isotropy_normal;
      r["isotropy_characteristic"] = fam.isotropy_characteristic;
      r["literal_normal"] = fam.literal_normal ? json(*fam.literal_normal) : json(nullptr);
      r["checks"] = checks_json(fam.checks);
      r["ok"] = fam.ok();
      if (o.witnesses) {
        json w = json::array();
        for (const auto& h : fam.members) w.push_back(subgroupoid_to_json(h));
        r["witnesses"] = std::move(w);
      }
      total += fam.count;
    }
    comps.push_back(std::move(r));
  }
  return {{"count", total}, {"components", comps}};
}

GroupCountTable load_table(const Options& o, std::istream& in) {
  if (o.catalog) return GroupCountTable::from_catalog();
  if (o.table.empty()) return GroupCountTable::builtin();
  const json j = read_json(o.table, in);
  const json& counts = j.is_object() && j.contains("counts") ? j.at("counts") : j;
  try {
    return GroupCountTable(counts.get<std::vector<std::uint64_t>>());
  } catch (const json::exception&) {
    usage_error("BadJson", "a count table is a list of positive integers or {\"counts\":[...]}");
  }
}

json run_classify(const Options& o, std::istream& in) {
  const GroupCountTable table = load_table(o, in);
  const auto count = groupoid_count(o.order, table);
  json classes = json::object();
  for (std::size_t q = 1; q <= o.order; ++q) classes[std::to_string(q)] = connected_class_count(q, table);
  return {{"order", o.order},
          {"count", count},
          {"connected_classes", classes},
          {"table", o.catalog ? "catalog" : o.table.empty() ? "builtin" : o.table}};
}

json run_atlas(const Options& o) {
  const auto classes = enumerate_groupoid_classes(o.order, o.limits());
  json list = json::array();
  for (const auto& c : classes) list.push_back(to_json(c));
  return {{"order", o.order}, {"count", classes.size()}, {"classes", list}};
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::validation: return 1;
    case ErrorCategory::usage: return 2;
    case ErrorCategory::cap: return 3;
  }
  return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Finite groupoids: structure, cosets, Lagrange, Sylow and classification", "gpd"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--pretty", o.pretty, "Indent JSON output");
  app.add_option("--max-order", o.max_order, "Largest groupoid order for exhaustive scans");
  app.add_option("--max-group", o.max_group, "Largest group order for exhaustive scans");

  auto input = [&](CLI::App* s) {
    s->add_option("input", o.input, "Groupoid JSON file, - for stdin")->required();
  };
  auto with_sub = [&](CLI::App* s) {
    input(s);
    s->add_option("--sub", o.sub, "Subgroupoid JSON file")->required();
  };

  auto* check = app.add_subcommand("check", "Validate a groupoid and print its decomposition");
  input(check);
  auto* info = app.add_subcommand("info", "Components, isotropy groups and order report");
  input(info);
  auto* cosets = app.add_subcommand("cosets", "Cosets of a subgroupoid");
  with_sub(cosets);
  cosets->add_option("--element", o.element, "Element id or identity label");
  cosets->add_option("--side", o.side, "left or right")->check(CLI::IsMember({"left", "right"}));
  auto* index = app.add_subcommand("index", "Index by formula and by coset count");
  with_sub(index);
  auto* lagrange = app.add_subcommand("lagrange", "Lagrange order report and identity");
  with_sub(lagrange);
  auto* sylow = app.add_subcommand("sylow", "Sylow subgroupoids per connected component");
  input(sylow);
  sylow->add_option("--d", o.d, "Identity count of a (d,p)-Sylow subgroupoid");
  sylow->add_option("--p", o.p, "Prime of a (d,p)-Sylow subgroupoid");
  sylow->add_option("--n", o.n, "Build one A_d x K with |K| = p^n instead of counting");
  sylow->add_option("--D", o.D, "Block sizes, comma separated")->delimiter(',');
  sylow->add_option("--P", o.P, "Primes, comma separated")->delimiter(',');
  sylow->add_flag("--formula-only", o.formula_only, "Skip the explicit enumeration");
  sylow->add_flag("--witnesses", o.witnesses, "List every subgroupoid found");
  auto* classify = app.add_subcommand("classify", "Count groupoids of a given order");
  classify->add_option("--order", o.order, "Groupoid order")->required()->check(CLI::PositiveNumber);
  auto* table_opt = classify->add_option("--table", o.table, "Group count table JSON");
  classify->add_flag("--catalog", o.catalog, "Use group counts from the built-in catalog")
      ->excludes(table_opt);
  auto* atlas = app.add_subcommand("atlas", "One representative per isomorphism class");
  atlas->add_option("--order", o.order, "Groupoid order")->required()->check(CLI::PositiveNumber);

  auto emit = [&](const json& j) { out << (o.pretty ? j.dump(2) : j.dump()) << '\n'; };
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const Error usage(ErrorCategory::usage, "UsageError", e.what());
    emit(usage.to_json());
    err << "gpd: " << e.what() << '\n';
    return 2;
  }

  try {
    json result;
    if (*check) result = run_check(o, in);
    else if (*info) result = run_info(o, in);
    else if (*cosets) result = run_cosets(o, in);
    else if (*index) result = run_index(o, in);
    else if (*lagrange) result = run_lagrange(o, in);
    else if (*sylow) result = run_sylow(o, in);
    else if (*classify) result = run_classify(o, in);
    else if (*atlas) result = run_atlas(o);
    emit(result);
    return 0;
  } catch (const Error& e) {
    emit(e.to_json());
    err << "gpd: " << e.kind() << ": " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    const Error internal(ErrorCategory::validation, "Internal", e.what());
    emit(internal.to_json());
    err << "gpd: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gpd
