#include "gpd/groupoid.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "gpd/catalog.hpp"
#include "gpd/error.hpp"
#include "gpd/numeric.hpp"

namespace gpd {

namespace {

constexpr std::size_t kMaxReportedViolations = 64;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::optional<std::uint32_t> parse_u32(std::string_view s) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

[[noreturn]] void throw_first(std::vector<Violation>& violations) {
  nlohmann::json all = nlohmann::json::array();
  for (const auto& v : violations) all.push_back({{"kind", v.kind}, {"witness", v.witness}});
  nlohmann::json witness = violations.front().witness;
  witness["violations"] = std::move(all);
  fail(violations.front().kind, "groupoid axiom violated: " + violations.front().kind,
       std::move(witness));
}

}  // namespace

Groupoid::Groupoid(std::vector<ConnectedComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) fail("Empty", "a groupoid needs at least one component");
  offsets_.reserve(components_.size());
  for (std::uint32_t c = 0; c < components_.size(); ++c) {
    const auto& comp = components_[c];
    if (comp.identities.empty()) fail("Empty", "component without identities", {{"component", c}});
    offsets_.push_back(order_);
    order_ = checked_add(order_, checked_mul(checked_mul(comp.d(), comp.d()), comp.m()));
    identity_count_ += comp.d();
    for (std::uint32_t i = 0; i < comp.identities.size(); ++i) {
      auto [it, inserted] = label_index_.emplace(comp.identities[i], IdentityRef{c, i});
      if (!inserted)
        fail("DuplicateLabels", "identity label used twice", {{"label", comp.identities[i]}});
    }
  }
}

std::size_t Groupoid::index(const Element& x) const noexcept {
  const auto& comp = components_[x.comp];
  return offsets_[x.comp] + (x.src * comp.d() + x.dst) * comp.m() + x.g;
}

Element Groupoid::element(std::size_t flat) const {
  if (flat >= order_)
    fail("UnknownElement", "flat index out of range", {{"index", flat}, {"order", order_}});
  const auto c = static_cast<std::size_t>(
      std::upper_bound(offsets_.begin(), offsets_.end(), flat) - offsets_.begin() - 1);
  const auto& comp = components_[c];
  std::size_t rest = flat - offsets_[c];
  const auto g = static_cast<elem_t>(rest % comp.m());
  rest /= comp.m();
  return {static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(rest / comp.d()),
          static_cast<std::uint32_t>(rest % comp.d()), g};
}

std::optional<Element> Groupoid::compose(const Element& a, const Element& b) const noexcept {
  if (a.comp != b.comp || a.src != b.dst) return std::nullopt;
  return Element{a.comp, b.src, a.dst, components_[a.comp].base.mul(a.g, b.g)};
}

Element Groupoid::inverse(const Element& x) const noexcept {
  return {x.comp, x.dst, x.src, components_[x.comp].base.inv(x.g)};
}

std::optional<Groupoid::IdentityRef> Groupoid::find_identity(std::string_view label) const {
  auto it = label_index_.find(label);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Groupoid::identity_label(IdentityRef ref) const {
  return components_.at(ref.comp).identities.at(ref.local);
}

std::vector<Groupoid::IdentityRef> Groupoid::identities() const {
  std::vector<IdentityRef> out;
  out.reserve(identity_count_);
  for (std::uint32_t c = 0; c < components_.size(); ++c)
    for (std::uint32_t i = 0; i < components_[c].d(); ++i) out.push_back({c, i});
  return out;
}

std::string Groupoid::element_id(const Element& x) const {
  return std::to_string(x.comp) + "/" + std::to_string(x.src) + "/" + std::to_string(x.dst) +
         "/" + std::to_string(x.g);
}

Element Groupoid::parse_element_id(std::string_view id) const {
  std::vector<std::uint32_t> parts;
  std::string_view rest = id;
  for (;;) {
    const auto slash = rest.find('/');
    auto v = parse_u32(rest.substr(0, slash));
    if (!v) break;
    parts.push_back(*v);
    if (slash == std::string_view::npos) break;
    rest.remove_prefix(slash + 1);
  }
  if (parts.size() != 4 || parts[0] >= components_.size() ||
      std::count(id.begin(), id.end(), '/') != 3)
    fail("UnknownElement", "not an element id of this groupoid", {{"id", id}});
  const auto& comp = components_[parts[0]];
  if (parts[1] >= comp.d() || parts[2] >= comp.d() || parts[3] >= comp.m())
    fail("UnknownElement", "element id out of range", {{"id", id}});
  return {parts[0], parts[1], parts[2], parts[3]};
}

CheckedRaw validate_raw(const RawGroupoid& raw) {
  if (raw.elements.empty()) fail("Empty", "a groupoid is a nonempty set");

  CheckedRaw out;
  out.raw = raw;
  const std::size_t n = raw.elements.size();
  out.size = n;

  std::map<std::string, std::uint32_t, std::less<>> index;
  for (std::uint32_t i = 0; i < n; ++i)
    if (!index.emplace(raw.elements[i], i).second)
      fail("DuplicateLabels", "element listed twice", {{"label", raw.elements[i]}});

  auto lookup = [&](const std::string& label) {
    auto it = index.find(label);
    if (it == index.end()) fail("UnknownElement", "product mentions an unknown element", {{"label", label}});
    return it->second;
  };
  out.table.assign(n * n, -1);
  for (const auto& [pair, result] : raw.product)
    out.table[lookup(pair.first) * n + lookup(pair.second)] =
        static_cast<std::int32_t>(lookup(result));

  std::vector<Violation> violations;
  auto report = [&](std::string kind, nlohmann::json witness) {
    if (violations.size() < kMaxReportedViolations)
      violations.push_back({std::move(kind), std::move(witness)});
  };
  const auto& L = raw.elements;

  for (std::uint32_t e = 0; e < n; ++e)
    if (out.mul(e, e) == static_cast<std::int32_t>(e)) out.identities.push_back(e);

  out.domain.assign(n, 0);
  out.range.assign(n, 0);
  for (std::uint32_t g = 0; g < n; ++g) {
    bool has_d = false, has_r = false;
    for (auto e : out.identities) {
      if (!has_d && out.mul(g, e) == static_cast<std::int32_t>(g)) {
        out.domain[g] = e;
        has_d = true;
      }
      if (!has_r && out.mul(e, g) == static_cast<std::int32_t>(g)) {
        out.range[g] = e;
        has_r = true;
      }
    }
    if (!has_d) report("MissingIdentity", {{"element", L[g]}, {"side", "right"}});
    if (!has_r) report("MissingIdentity", {{"element", L[g]}, {"side", "left"}});
  }
  if (!violations.empty()) throw_first(violations);

  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t h = 0; h < n; ++h) {
      const bool defined = out.mul(g, h) >= 0;
      if (defined != (out.domain[g] == out.range[h]))
        report("CompositionDomainError",
               {{"left", L[g]}, {"right", L[h]}, {"defined", defined}, {"d_left", L[out.domain[g]]},
                {"r_right", L[out.range[h]]}});
    }
  if (!violations.empty()) throw_first(violations);

  out.inverse.assign(n, 0);
  for (std::uint32_t g = 0; g < n; ++g) {
    bool found = false;
    for (std::uint32_t h = 0; h < n && !found; ++h) {
      if (out.mul(h, g) == static_cast<std::int32_t>(out.domain[g]) &&
          out.mul(g, h) == static_cast<std::int32_t>(out.range[g])) {
        out.inverse[g] = h;
        found = true;
      }
    }
    if (!found) report("MissingInverse", {{"element", L[g]}});
  }
  if (!violations.empty()) throw_first(violations);

  // (ab)c = a(bc) whenever either side makes sense
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto ab = out.mul(a, b);
      for (std::uint32_t c = 0; c < n; ++c) {
        const auto bc = out.mul(b, c);
        if (ab < 0 && bc < 0) continue;
        const auto left = ab >= 0 ? out.mul(ab, c) : -1;
        const auto right = bc >= 0 ? out.mul(a, bc) : -1;
        const bool left_sense = ab >= 0 && left >= 0;
        const bool right_sense = bc >= 0 && right >= 0;
        if (!left_sense && !right_sense) continue;
        if (left_sense != right_sense || left != right)
          report("AssociativityViolation", {{"a", L[a]}, {"b", L[b]}, {"c", L[c]}});
      }
    }
  if (!violations.empty()) throw_first(violations);
  return out;
}

StructureResult structure(const RawGroupoid& raw) { return structure(validate_raw(raw)); }

StructureResult structure(const CheckedRaw& checked) {
  const std::size_t n = checked.size;
  const auto& L = checked.raw.elements;

  UnionFind uf(n);
  for (std::uint32_t g = 0; g < n; ++g) uf.unite(checked.domain[g], checked.range[g]);

  std::map<std::size_t, std::vector<std::uint32_t>> classes;
  for (auto e : checked.identities) classes[uf.find(e)].push_back(e);

  std::vector<std::vector<std::uint32_t>> blocks;
  for (auto& [root, members] : classes) {
    std::sort(members.begin(), members.end(),
              [&](std::uint32_t a, std::uint32_t b) { return L[a] < L[b]; });
    blocks.push_back(std::move(members));
  }
  std::sort(blocks.begin(), blocks.end(),
            [&](const auto& a, const auto& b) { return L[a.front()] < L[b.front()]; });

  std::vector<ConnectedComponent> comps;
  std::vector<std::uint32_t> comp_of(n), local_of(n);
  std::vector<std::uint32_t> transition(n);         // per identity f: t_f in G(e, f)
  std::vector<std::map<std::uint32_t, elem_t>> base_index(blocks.size());
  for (std::uint32_t c = 0; c < blocks.size(); ++c) {
    const auto& block = blocks[c];
    const std::uint32_t e = block.front();
    for (std::uint32_t i = 0; i < block.size(); ++i) {
      comp_of[block[i]] = c;
      local_of[block[i]] = i;
    }

    std::vector<std::uint32_t> iso{e};
    for (std::uint32_t g = 0; g < n; ++g)
      if (g != e && checked.domain[g] == e && checked.range[g] == e) iso.push_back(g);
    auto& bi = base_index[c];
    for (elem_t i = 0; i < iso.size(); ++i) bi[iso[i]] = i;
    Table t(iso.size(), std::vector<elem_t>(iso.size()));
    for (std::size_t a = 0; a < iso.size(); ++a)
      for (std::size_t b = 0; b < iso.size(); ++b)
        t[a][b] = bi.at(static_cast<std::uint32_t>(checked.mul(iso[a], iso[b])));
    FiniteGroup base = make_group_from_table(t, "G_" + L[e]);
    if (auto name = identify_small_group(base); !name.empty()) base = base.renamed(name);

    for (auto f : block) {
      transition[f] = f;
      if (f == e) continue;
      for (std::uint32_t g = 0; g < n; ++g)
        if (checked.domain[g] == e && checked.range[g] == f) {
          transition[f] = g;
          break;
        }
    }
    std::vector<std::string> labels;
    for (auto f : block) labels.push_back(L[f]);
    comps.push_back({std::move(labels), std::move(base)});
  }

  Groupoid groupoid(std::move(comps));
  std::vector<Element> witness(n);
  std::vector<char> hit(groupoid.order(), 0);
  if (groupoid.order() != n)
    fail("StructureMismatch", "component orders do not add up to the element count",
         {{"elements", n}, {"structured_order", groupoid.order()}});
  for (std::uint32_t g = 0; g < n; ++g) {
    const auto d = checked.domain[g], r = checked.range[g];
    const auto tr_inv = checked.inverse[transition[r]];
    const auto gt = checked.mul(g, transition[d]);
    const auto core = checked.mul(tr_inv, static_cast<std::size_t>(gt));
    const auto c = comp_of[d];
    witness[g] = {c, local_of[d], local_of[r],
                  base_index[c].at(static_cast<std::uint32_t>(core))};
    auto& seen = hit[groupoid.index(witness[g])];
    if (seen) fail("StructureMismatch", "structure map is not injective", {{"element", L[g]}});
    seen = 1;
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto ab = checked.mul(a, b);
      if (ab < 0) continue;
      auto image = groupoid.compose(witness[a], witness[b]);
      if (!image || *image != witness[ab])
        fail("StructureMismatch", "structure map is not multiplicative",
             {{"a", L[a]}, {"b", L[b]}});
    }
  return {std::move(groupoid), std::move(witness)};
}

RawGroupoid to_raw(const Groupoid& g) {
  RawGroupoid raw;
  raw.elements.reserve(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Element x = g.element(i);
    raw.elements.push_back(g.is_identity(x) ? g.identity_label({x.comp, x.src}) : g.element_id(x));
  }
  for (std::size_t a = 0; a < g.order(); ++a) {
    const Element x = g.element(a);
    const auto& comp = g.component(x.comp);
    for (std::uint32_t s = 0; s < comp.d(); ++s)
      for (elem_t h = 0; h < comp.m(); ++h) {
        const Element y{x.comp, s, x.src, h};
        raw.product[{raw.elements[a], raw.elements[g.index(y)]}] =
            raw.elements[g.index(*g.compose(x, y))];
      }
  }
  return raw;
}

Groupoid make_connected(std::vector<std::string> identities, FiniteGroup base) {
  std::vector<ConnectedComponent> comps;
  comps.push_back({std::move(identities), std::move(base)});
  return Groupoid(std::move(comps));
}

Groupoid disjoint_union(std::span<const Groupoid> parts) {
  std::vector<ConnectedComponent> comps;
  for (const auto& p : parts)
    comps.insert(comps.end(), p.components().begin(), p.components().end());
  return Groupoid(std::move(comps));
}

std::vector<Element> hom_set(const Groupoid& g, std::string_view e1, std::string_view e2) {
  auto a = g.find_identity(e1);
  auto b = g.find_identity(e2);
  if (!a) fail("UnknownIdentity", "not an identity of the groupoid", {{"label", e1}});
  if (!b) fail("UnknownIdentity", "not an identity of the groupoid", {{"label", e2}});
  std::vector<Element> out;
  if (a->comp != b->comp) return out;
  for (elem_t x = 0; x < g.component(a->comp).m(); ++x) out.push_back({a->comp, a->local, b->local, x});
  return out;
}

std::size_t groupoid_order(const Groupoid& g) { return g.order(); }

std::vector<Element> isotropy_subgroupoid(const Groupoid& g) {
  std::vector<Element> out;
  for (std::uint32_t c = 0; c < g.component_count(); ++c) {
    const auto& comp = g.component(c);
    for (std::uint32_t i = 0; i < comp.d(); ++i)
      for (elem_t x = 0; x < comp.m(); ++x) out.push_back({c, i, i, x});
  }
  return out;
}

bool are_isomorphic_groupoids(const Groupoid& a, const Groupoid& b, const Limits& limits) {
  if (a.order() != b.order() || a.component_count() != b.component_count()) return false;
  std::vector<char> used(b.component_count(), 0);
  for (const auto& ca : a.components()) {
    bool matched = false;
    for (std::size_t j = 0; j < b.component_count() && !matched; ++j) {
      const auto& cb = b.component(j);
      if (used[j] || cb.d() != ca.d() || cb.m() != ca.m()) continue;
      if (are_isomorphic(ca.base, cb.base, limits)) {
        used[j] = 1;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool corollary_squarefree_check(const Groupoid& g) {
  if (!g.is_connected())
    fail("NotConnected", "the corollary is stated for connected groupoids",
         {{"components", g.component_count()}});
  return !is_squarefree(g.order()) || g.identity_count() == 1;
}

}  // namespace gpd
