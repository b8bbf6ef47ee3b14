// Brute-force reference computations used only by the tests. None of these
// call into the library's search routines; they work on raw tables and
// bitmasks.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "gpd/group.hpp"
#include "gpd/groupoid.hpp"

namespace oracle {

using gpd::elem_t;

/// Every subset of g (|g| <= 16) closed under product and containing 0.
inline std::vector<std::vector<elem_t>> subgroups_by_subsets(const gpd::FiniteGroup& g) {
  const std::size_t m = g.order();
  std::vector<std::vector<elem_t>> out;
  for (std::uint32_t mask = 1; mask < (1u << m); mask += 2) {
    bool closed = true;
    for (elem_t a = 0; a < m && closed; ++a)
      for (elem_t b = 0; b < m && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> g.mul(a, b) & 1)) closed = false;
    if (!closed) continue;
    std::vector<elem_t> s;
    for (elem_t a = 0; a < m; ++a)
      if (mask >> a & 1) s.push_back(a);
    out.push_back(std::move(s));
  }
  return out;
}

/// Groups of order m up to isomorphism, counted from scratch: normalized
/// Latin squares with identity 0, associativity, then canonical form under
/// every relabeling fixing 0.
inline std::size_t group_count_by_tables(std::size_t m) {
  if (m == 1) return 1;
  std::vector<std::vector<int>> t(m, std::vector<int>(m, -1));
  for (std::size_t i = 0; i < m; ++i) t[0][i] = t[i][0] = static_cast<int>(i);
  std::set<std::vector<int>> canon;
  std::vector<int> perm(m - 1);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::function<void(std::size_t)> fill = [&](std::size_t cell) {
    if (cell == m * m) {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          for (std::size_t c = 0; c < m; ++c)
            if (t[t[a][b]][c] != t[a][t[b][c]]) return;
      std::vector<int> best;
      for (const auto& p : perms) {
        std::vector<int> sigma(m), inv(m);
        sigma[0] = 0;
        for (std::size_t i = 1; i < m; ++i) sigma[i] = p[i - 1];
        for (std::size_t i = 0; i < m; ++i) inv[sigma[i]] = static_cast<int>(i);
        std::vector<int> relabeled(m * m);
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b)
            relabeled[a * m + b] = sigma[t[inv[a]][inv[b]]];
        if (best.empty() || relabeled < best) best = std::move(relabeled);
      }
      canon.insert(std::move(best));
      return;
    }
    const std::size_t r = cell / m, c = cell % m;
    if (t[r][c] != -1) {
      fill(cell + 1);
      return;
    }
    for (int v = 0; v < static_cast<int>(m); ++v) {
      bool ok = true;
      for (std::size_t k = 0; k < m && ok; ++k) ok = t[r][k] != v && t[k][c] != v;
      if (!ok) continue;
      t[r][c] = v;
      fill(cell + 1);
      t[r][c] = -1;
    }
  };
  fill(0);
  return canon.size();
}

/// Composition table of a groupoid over flat indices, -1 when undefined.
struct FlatTable {
  std::size_t n = 0;
  std::vector<int> mul;
  std::vector<int> inv;
  std::vector<int> dom, ran;

  explicit FlatTable(const gpd::Groupoid& g) : n(g.order()), mul(n * n, -1), inv(n), dom(n), ran(n) {
    for (std::size_t a = 0; a < n; ++a) {
      const auto x = g.element(a);
      inv[a] = static_cast<int>(g.index(g.inverse(x)));
      dom[a] = static_cast<int>(g.index(g.domain(x)));
      ran[a] = static_cast<int>(g.index(g.range(x)));
      for (std::size_t b = 0; b < n; ++b)
        if (auto p = g.compose(x, g.element(b))) mul[a * n + b] = static_cast<int>(g.index(*p));
    }
  }
  int at(std::size_t a, std::size_t b) const { return mul[a * n + b]; }
};

inline bool is_subgroupoid_mask(const FlatTable& t, std::uint64_t mask) {
  if (mask == 0) return false;
  for (std::size_t a = 0; a < t.n; ++a) {
    if (!(mask >> a & 1)) continue;
    if (!(mask >> t.inv[a] & 1) || !(mask >> t.dom[a] & 1)) return false;
    for (std::size_t b = 0; b < t.n; ++b)
      if ((mask >> b & 1) && t.at(a, b) >= 0 && !(mask >> t.at(a, b) & 1)) return false;
  }
  return true;
}

/// Literal scan of all 2^n subsets; n <= 20.
inline std::set<std::uint64_t> subgroupoids_by_subsets(const gpd::Groupoid& g) {
  const FlatTable t(g);
  std::set<std::uint64_t> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << t.n); ++mask)
    if (is_subgroupoid_mask(t, mask)) out.insert(mask);
  return out;
}

inline std::uint64_t close(const FlatTable& t, std::uint64_t mask) {
  for (;;) {
    std::uint64_t next = mask;
    for (std::size_t a = 0; a < t.n; ++a) {
      if (!(mask >> a & 1)) continue;
      next |= std::uint64_t{1} << t.inv[a];
      next |= std::uint64_t{1} << t.dom[a];
      next |= std::uint64_t{1} << t.ran[a];
      for (std::size_t b = 0; b < t.n; ++b)
        if ((mask >> b & 1) && t.at(a, b) >= 0) next |= std::uint64_t{1} << t.at(a, b);
    }
    if (next == mask) return mask;
    mask = next;
  }
}

/// Every subgroupoid reached by adding one element at a time and closing; n <= 64.
inline std::set<std::uint64_t> subgroupoids_by_closure(const gpd::Groupoid& g) {
  const FlatTable t(g);
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> stack{0};
  while (!stack.empty()) {
    const auto h = stack.back();
    stack.pop_back();
    for (std::size_t x = 0; x < t.n; ++x) {
      if (h >> x & 1) continue;
      const auto c = close(t, h | std::uint64_t{1} << x);
      if (seen.insert(c).second) stack.push_back(c);
    }
  }
  return seen;
}

/// Distinct nonempty right cosets {hx : h in H, hx defined}.
inline std::size_t right_coset_count(const FlatTable& t, std::uint64_t h) {
  std::set<std::uint64_t> cosets;
  for (std::size_t x = 0; x < t.n; ++x) {
    std::uint64_t c = 0;
    for (std::size_t a = 0; a < t.n; ++a)
      if ((h >> a & 1) && t.at(a, x) >= 0) c |= std::uint64_t{1} << t.at(a, x);
    if (c) cosets.insert(c);
  }
  return cosets.size();
}

inline std::uint64_t mask_of(const std::vector<std::size_t>& flats) {
  std::uint64_t m = 0;
  for (auto f : flats) m |= std::uint64_t{1} << f;
  return m;
}

}  // namespace oracle
