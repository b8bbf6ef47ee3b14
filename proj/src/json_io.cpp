#include "gpd/json_io.hpp"

#include <algorithm>

#include "gpd/catalog.hpp"
#include "gpd/error.hpp"

namespace gpd {

using nlohmann::json;

namespace {

[[noreturn]] void bad_json(const std::string& message, json witness = json::object()) {
  usage_error("BadJson", message, std::move(witness));
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_json(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad_json(std::string("field \"") + what + "\" has the wrong type", {{"value", j}});
  }
}

ElementMap automorphism_entry(const json& entry, const FiniteGroup& h) {
  if (entry.is_number_integer()) {
    const auto a = entry.get<std::int64_t>();
    if (a < 0) bad_json("multiplier must be nonnegative", {{"value", a}});
    return cyclic_multiplier(h.order(), static_cast<std::uint64_t>(a));
  }
  auto f = as<ElementMap>(entry, "action");
  if (f.size() != h.order())
    bad_json("automorphism must list the image of every element of h",
             {{"expected", h.order()}, {"got", f.size()}});
  for (auto x : f)
    if (x >= h.order()) bad_json("automorphism image out of range", {{"value", x}});
  return f;
}

}  // namespace

FiniteGroup group_from_json(const json& j) {
  const auto kind = as<std::string>(member(j, "kind"), "kind");
  if (kind == "catalog") {
    const auto name = as<std::string>(member(j, "name"), "name");
    std::vector<std::int64_t> params;
    if (j.contains("params")) params = as<std::vector<std::int64_t>>(j.at("params"), "params");
    return catalog_group(name, params);
  }
  if (kind == "table") {
    const auto rows = as<std::vector<std::vector<std::int64_t>>>(member(j, "cayley"), "cayley");
    Table t;
    const auto m = rows.size();
    for (const auto& row : rows) {
      if (row.size() != m) fail("BadTable", "Cayley table is not square", {{"rows", m}, {"row", row.size()}});
      std::vector<elem_t> r;
      for (auto v : row) {
        if (v < 0 || static_cast<std::size_t>(v) >= m)
          fail("BadTable", "table entry out of range", {{"value", v}, {"order", m}});
        r.push_back(static_cast<elem_t>(v));
      }
      t.push_back(std::move(r));
    }
    std::string name;
    if (j.contains("name")) name = as<std::string>(j.at("name"), "name");
    return make_group_from_table(t, name);
  }
  if (kind == "semidirect") {
    const FiniteGroup h = group_from_json(member(j, "h"));
    const FiniteGroup k = group_from_json(member(j, "k"));
    const auto& action = member(j, "action");
    if (!action.is_array()) bad_json("\"action\" must be a list");
    std::vector<ElementMap> maps;
    for (const auto& entry : action) maps.push_back(automorphism_entry(entry, h));
    if (j.contains("k_generators")) {
      const auto gens = as<std::vector<elem_t>>(j.at("k_generators"), "k_generators");
      return semidirect_product(h, k, gens, maps);
    }
    return semidirect_product(h, k, maps);
  }
  bad_json("unknown group kind \"" + kind + "\"", {{"kind", kind}});
}

json group_to_json(const FiniteGroup& g) {
  return {{"kind", "table"}, {"name", g.name()}, {"cayley", g.cayley()}};
}

RawGroupoid raw_from_json(const json& j) {
  RawGroupoid raw;
  raw.elements = as<std::vector<std::string>>(member(j, "elements"), "elements");
  const auto& product = member(j, "product");
  auto put = [&](std::string a, std::string b, std::string c) {
    if (!raw.product.emplace(std::pair{std::move(a), std::move(b)}, std::move(c)).second)
      bad_json("product pair listed twice");
  };
  if (product.is_object()) {
    for (const auto& [key, value] : product.items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos)
        bad_json("product keys have the form \"g,h\"", {{"key", key}});
      put(key.substr(0, comma), key.substr(comma + 1), as<std::string>(value, "product"));
    }
  } else if (product.is_array()) {
    for (const auto& t : product) {
      const auto triple = as<std::vector<std::string>>(t, "product");
      if (triple.size() != 3) bad_json("product triples have the form [g, h, gh]", {{"entry", t}});
      put(triple[0], triple[1], triple[2]);
    }
  } else {
    bad_json("\"product\" must be an object or a list of triples");
  }
  return raw;
}

json raw_to_json(const RawGroupoid& raw) {
  json product = json::object();
  for (const auto& [pair, result] : raw.product) product[pair.first + "," + pair.second] = result;
  return {{"raw", {{"elements", raw.elements}, {"product", product}}}};
}

Groupoid groupoid_from_json(const json& j) {
  if (!j.is_object()) bad_json("groupoid JSON must be an object");
  if (j.contains("components")) {
    const auto& comps = j.at("components");
    if (!comps.is_array()) bad_json("\"components\" must be a list");
    std::vector<ConnectedComponent> out;
    for (const auto& c : comps)
      out.push_back({as<std::vector<std::string>>(member(c, "identities"), "identities"),
                     group_from_json(member(c, "group"))});
    return Groupoid(std::move(out));
  }
  if (j.contains("raw")) return structure(raw_from_json(j.at("raw"))).groupoid;
  if (j.contains("kind")) return make_connected({"e"}, group_from_json(j));
  bad_json("expected \"components\", \"raw\" or a group");
}

json groupoid_to_json(const Groupoid& g) {
  json comps = json::array();
  for (const auto& c : g.components())
    comps.push_back({{"identities", c.identities}, {"group", group_to_json(c.base)}});
  return {{"components", comps}};
}

Subgroupoid subgroupoid_from_json(const Groupoid& g, const json& j) {
  if (!j.is_object()) bad_json("subgroupoid JSON must be an object");
  if (j.contains("elements")) {
    const auto ids = as<std::vector<std::string>>(j.at("elements"), "elements");
    return validate_subgroupoid(g, ids);
  }
  if (j.contains("components")) {
    std::vector<SubComponent> parts;
    for (const auto& c : j.at("components")) {
      const auto labels = as<std::vector<std::string>>(member(c, "identities"), "identities");
      if (labels.empty()) fail("Empty", "empty identity block");
      SubComponent sc;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        auto ref = g.find_identity(labels[i]);
        if (!ref) fail("UnknownIdentity", "not an identity of the groupoid", {{"label", labels[i]}});
        if (i > 0 && ref->comp != sc.comp)
          fail("UnknownIdentity", "a block must lie in one component", {{"label", labels[i]}});
        sc.comp = ref->comp;
        sc.identities.push_back(ref->local);
      }
      auto elems = as<std::vector<elem_t>>(member(c, "subgroup"), "subgroup");
      for (auto x : elems)
        if (x >= g.component(sc.comp).m()) fail("NotASubgroup", "element out of range", {{"value", x}});
      std::sort(elems.begin(), elems.end());
      elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
      sc.isotropy.elements = std::move(elems);
      if (c.contains("transversal")) sc.transversal = as<std::vector<elem_t>>(c.at("transversal"), "transversal");
      parts.push_back(std::move(sc));
    }
    return subgroupoid_from_parts(g, std::move(parts));
  }
  bad_json("expected \"elements\" or \"components\"");
}

json subgroupoid_to_json(const Subgroupoid& h) {
  const Groupoid& g = h.parent();
  json comps = json::array();
  for (const auto& p : h.parts()) {
    std::vector<std::string> labels;
    for (auto i : p.identities) labels.push_back(g.identity_label({p.comp, i}));
    json c = {{"identities", labels}, {"subgroup", p.isotropy.elements}};
    if (std::any_of(p.transversal.begin(), p.transversal.end(), [](elem_t x) { return x != 0; }))
      c["transversal"] = p.transversal;
    comps.push_back(std::move(c));
  }
  return {{"components", comps}, {"elements", h.element_ids()}};
}

json to_json(const GroupoidClass& c) {
  json parts = json::array();
  for (const auto& p : c.parts) parts.push_back({{"d", p.d}, {"m", p.m}, {"group", p.group}});
  return {{"parts", parts}};
}

}  // namespace gpd
