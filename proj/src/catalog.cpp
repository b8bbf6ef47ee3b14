#include "gpd/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gpd/error.hpp"
#include "gpd/numeric.hpp"

namespace gpd {

namespace {

using Perm = std::vector<elem_t>;

bool is_even(const Perm& p) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

FiniteGroup permutation_group(std::size_t n, bool even_only, std::string name) {
  std::vector<Perm> perms;
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!even_only || is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  const std::size_t m = perms.size();
  Table t(m, std::vector<elem_t>(m));
  Perm composed(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t x = 0; x < n; ++x) composed[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<elem_t>(
          std::lower_bound(perms.begin(), perms.end(), composed) - perms.begin());
    }
  }
  return make_group_from_table(t, std::move(name));
}

void require_params(std::string_view name, std::span<const std::int64_t> params,
                    std::size_t count) {
  if (params.size() != count)
    usage_error("BadParams",
                std::string(name) + " expects " + std::to_string(count) + " parameter(s)",
                {{"name", name}, {"params", std::vector<std::int64_t>(params.begin(), params.end())}});
}

std::size_t positive_param(std::string_view name, std::int64_t v, std::int64_t max) {
  if (v < 1 || v > max)
    usage_error("BadParams", std::string(name) + " parameter out of range",
                {{"name", name}, {"value", v}, {"max", max}});
  return static_cast<std::size_t>(v);
}

}  // namespace

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) usage_error("BadParams", "cyclic group of order 0", {{"n", 0}});
  Table t(n, std::vector<elem_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<elem_t>((a + b) % n);
  return make_group_from_table(t, "Z" + std::to_string(n));
}

FiniteGroup klein_group() {
  const std::uint64_t factors[] = {2, 2};
  return abelian_group(factors).renamed("K4");
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n == 0) usage_error("BadParams", "dihedral group of degree 0", {{"n", 0}});
  const std::size_t m = 2 * n;
  Table t(m, std::vector<elem_t>(m));
  // element (f, i) is s^f r^i, stored at f * n + i
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t f1 = a / n, i1 = a % n, f2 = b / n, i2 = b % n;
      const std::size_t f = f1 ^ f2;
      const std::size_t i = ((f2 ? n - i1 : i1) + i2) % n;
      t[a][b] = static_cast<elem_t>(f * n + i);
    }
  }
  return make_group_from_table(t, "D" + std::to_string(n));
}

FiniteGroup symmetric_group(std::size_t n) {
  if (n == 0 || n > 5) usage_error("BadParams", "symmetric group degree must be 1..5", {{"n", n}});
  return permutation_group(n, false, "S" + std::to_string(n));
}

FiniteGroup alternating_group(std::size_t n) {
  if (n == 0 || n > 6)
    usage_error("BadParams", "alternating group degree must be 1..6", {{"n", n}});
  return permutation_group(n, true, "A" + std::to_string(n));
}

FiniteGroup dicyclic_group(std::size_t n) {
  if (n == 0) usage_error("BadParams", "dicyclic group with n = 0", {{"n", 0}});
  const std::size_t two_n = 2 * n;
  const std::size_t m = 4 * n;
  Table t(m, std::vector<elem_t>(m));
  // element (i, f) is a^i x^f, stored at f * 2n + i
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t i1 = a % two_n, f1 = a / two_n, i2 = b % two_n, f2 = b / two_n;
      std::size_t i = 0, f = 0;
      if (f1 == 0) {
        i = (i1 + i2) % two_n;
        f = f2;
      } else if (f2 == 0) {
        i = (i1 + two_n - i2) % two_n;
        f = 1;
      } else {
        i = (i1 + two_n - i2 + n) % two_n;
        f = 0;
      }
      t[a][b] = static_cast<elem_t>(f * two_n + i);
    }
  }
  return make_group_from_table(t, n == 2 ? "Q8" : "Dic" + std::to_string(n));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = g.order() * h.order();
  Table t(m, std::vector<elem_t>(m));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      const auto a = g.mul(x / h.order(), y / h.order());
      const auto b = h.mul(x % h.order(), y % h.order());
      t[x][y] = static_cast<elem_t>(a * h.order() + b);
    }
  }
  return make_group_from_table(t, g.name() + "x" + h.name());
}

FiniteGroup abelian_group(std::span<const std::uint64_t> cyclic_factors) {
  if (cyclic_factors.empty()) return cyclic_group(1);
  FiniteGroup out = cyclic_group(cyclic_factors[0]);
  for (std::size_t i = 1; i < cyclic_factors.size(); ++i)
    out = direct_product(out, cyclic_group(cyclic_factors[i]));
  return out;
}

ElementMap cyclic_multiplier(std::size_t n, std::uint64_t a) {
  ElementMap f(n);
  for (std::size_t x = 0; x < n; ++x) f[x] = static_cast<elem_t>((a * x) % n);
  return f;
}

FiniteGroup semidirect_product(const FiniteGroup& h, const FiniteGroup& k,
                               std::span<const ElementMap> action) {
  if (action.size() != k.order())
    usage_error("BadParams", "action needs one automorphism per element of k",
                {{"expected", k.order()}, {"got", action.size()}});
  for (elem_t x = 0; x < k.order(); ++x)
    if (!is_isomorphism(h, h, action[x]))
      fail("NotAnAutomorphism", "action image is not an automorphism of h", {{"k_element", x}});
  for (elem_t a = 0; a < k.order(); ++a) {
    for (elem_t b = 0; b < k.order(); ++b) {
      const ElementMap& ab = action[k.mul(a, b)];
      for (elem_t x = 0; x < h.order(); ++x) {
        if (ab[x] != action[a][action[b][x]])
          fail("NotAHomomorphism", "action(ab) differs from action(a) o action(b)",
               {{"a", a}, {"b", b}, {"h_element", x}});
      }
    }
  }

  const std::size_t nh = h.order();
  const std::size_t m = nh * k.order();
  Table t(m, std::vector<elem_t>(m));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      const elem_t h1 = x % nh, k1 = x / nh, h2 = y % nh, k2 = y / nh;
      const elem_t hh = h.mul(h1, action[k1][h2]);
      const elem_t kk = k.mul(k1, k2);
      t[x][y] = static_cast<elem_t>(kk * nh + hh);
    }
  }
  return make_group_from_table(t, "(" + h.name() + "):(" + k.name() + ")");
}

FiniteGroup semidirect_product(const FiniteGroup& h, const FiniteGroup& k,
                               std::span<const elem_t> k_generators,
                               std::span<const ElementMap> generator_action) {
  if (k_generators.size() != generator_action.size())
    usage_error("BadParams", "one action entry is needed per generator of k");
  for (std::size_t i = 0; i < k_generators.size(); ++i) {
    if (k_generators[i] >= k.order())
      usage_error("BadParams", "generator out of range", {{"generator", k_generators[i]}});
    if (!is_isomorphism(h, h, generator_action[i]))
      fail("NotAnAutomorphism", "generator image is not an automorphism of h",
           {{"k_element", k_generators[i]}});
  }

  std::vector<ElementMap> action(k.order());
  std::vector<char> known(k.order(), 0);
  ElementMap id(h.order());
  std::iota(id.begin(), id.end(), 0);
  action[0] = id;
  known[0] = 1;
  std::vector<elem_t> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const elem_t x = queue[qi];
    for (std::size_t i = 0; i < k_generators.size(); ++i) {
      const elem_t y = k.mul(x, k_generators[i]);
      ElementMap composed(h.order());
      for (elem_t e = 0; e < h.order(); ++e) composed[e] = action[x][generator_action[i][e]];
      if (!known[y]) {
        action[y] = std::move(composed);
        known[y] = 1;
        queue.push_back(y);
      } else if (action[y] != composed) {
        fail("NotAHomomorphism", "generator action does not extend to a homomorphism",
             {{"k_element", y}});
      }
    }
  }
  if (queue.size() != k.order())
    usage_error("BadParams", "k_generators do not generate k");
  return semidirect_product(h, k, action);
}

FiniteGroup catalog_group(std::string_view name, std::span<const std::int64_t> params) {
  if (name == "cyclic") {
    require_params(name, params, 1);
    return cyclic_group(positive_param(name, params[0], 4096));
  }
  if (name == "klein") {
    require_params(name, params, 0);
    return klein_group();
  }
  if (name == "dihedral") {
    require_params(name, params, 1);
    return dihedral_group(positive_param(name, params[0], 2048));
  }
  if (name == "symmetric") {
    require_params(name, params, 1);
    return symmetric_group(positive_param(name, params[0], 5));
  }
  if (name == "alternating") {
    require_params(name, params, 1);
    return alternating_group(positive_param(name, params[0], 6));
  }
  if (name == "dicyclic") {
    require_params(name, params, 1);
    return dicyclic_group(positive_param(name, params[0], 1024));
  }
  if (name == "quaternion") {
    require_params(name, params, 0);
    return dicyclic_group(2);
  }
  if (name == "direct_product") {
    if (params.empty()) usage_error("BadParams", "direct_product needs cyclic factor orders");
    std::vector<std::uint64_t> factors;
    std::uint64_t total = 1;
    for (auto p : params) {
      factors.push_back(positive_param(name, p, 4096));
      total = checked_mul(total, factors.back());
    }
    if (total > 4096) usage_error("BadParams", "direct_product is too large", {{"order", total}});
    return abelian_group(factors);
  }
  if (name == "from_table") {
    std::size_t m = 0;
    while (m * m < params.size()) ++m;
    if (m == 0 || m * m != params.size())
      usage_error("BadParams", "from_table expects m*m entries", {{"entries", params.size()}});
    Table t(m, std::vector<elem_t>(m));
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i] < 0) usage_error("BadParams", "negative table entry", {{"index", i}});
      t[i / m][i % m] = static_cast<elem_t>(params[i]);
    }
    return make_group_from_table(t);
  }
  usage_error("UnknownName", "unknown catalog group '" + std::string(name) + "'", {{"name", name}});
}

std::vector<FiniteGroup> small_groups(std::size_t m) {
  auto ab = [](std::initializer_list<std::uint64_t> f) {
    return abelian_group(std::span<const std::uint64_t>(f.begin(), f.size()));
  };
  auto z = [](elem_t n) { return cyclic_group(n); };
  switch (m) {
    case 1: return {z(1)};
    case 2: return {z(2)};
    case 3: return {z(3)};
    case 4: return {z(4), klein_group()};
    case 5: return {z(5)};
    case 6: return {z(6), dihedral_group(3)};
    case 7: return {z(7)};
    case 8: return {z(8), ab({4, 2}), ab({2, 2, 2}), dihedral_group(4), dicyclic_group(2)};
    case 9: return {z(9), ab({3, 3})};
    case 10: return {z(10), dihedral_group(5)};
    case 11: return {z(11)};
    case 12: return {z(12), ab({6, 2}), dihedral_group(6), alternating_group(4), dicyclic_group(3)};
    default: break;
  }
  fail("CatalogGap", "no complete list of groups of order " + std::to_string(m),
       {{"m", m}, {"max", kSmallGroupsMaxOrder}});
}

std::string identify_small_group(const FiniteGroup& g) {
  if (g.order() == 0 || g.order() > kSmallGroupsMaxOrder) return {};
  for (const auto& candidate : small_groups(g.order()))
    if (are_isomorphic(g, candidate)) return candidate.name();
  return {};
}

}  // namespace gpd
