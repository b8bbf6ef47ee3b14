#include "gpd/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gpd/catalog.hpp"
#include "gpd/error.hpp"
#include "gpd/numeric.hpp"

namespace gpd {

std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t rest, std::size_t max_part) {
    if (rest == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t part = std::min(rest, max_part); part >= 1; --part) {
      current.push_back(part);
      rec(rest - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

GroupCountTable::GroupCountTable(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty() || counts_[0] != 1)
    fail("BadTable", "a group count table starts with g(1) = 1");
  for (std::size_t m = 1; m <= counts_.size(); ++m)
    if (counts_[m - 1] == 0) fail("BadTable", "every order has at least the cyclic group", {{"m", m}});
}

GroupCountTable GroupCountTable::builtin() { return GroupCountTable({1, 1, 1, 2, 1, 2}); }

GroupCountTable GroupCountTable::from_catalog() {
  std::vector<std::uint64_t> counts;
  for (std::size_t m = 1; m <= kSmallGroupsMaxOrder; ++m) counts.push_back(small_groups(m).size());
  return GroupCountTable(std::move(counts));
}

std::uint64_t GroupCountTable::at(std::size_t m) const {
  if (!covers(m))
    fail("TableGap", "the group count table has no entry for order " + std::to_string(m),
         {{"m", m}, {"table_size", counts_.size()}});
  return counts_[m - 1];
}

std::uint64_t connected_class_count(std::size_t q, const GroupCountTable& table) {
  std::uint64_t c = 0;
  for (std::size_t d = 1; d * d <= q; ++d)
    if (q % (d * d) == 0) c = checked_add(c, table.at(q / (d * d)));
  return c;
}

std::uint64_t groupoid_count(std::size_t n, const GroupCountTable& table) {
  if (n == 0) return 1;
  std::vector<std::uint64_t> ways(n + 1, 0);
  ways[0] = 1;
  for (std::size_t q = 1; q <= n; ++q) {
    const auto c = connected_class_count(q, table);
    if (c == 0) continue;
    std::vector<std::uint64_t> next(n + 1, 0);
    for (std::size_t s = 0; s <= n; ++s)
      for (std::size_t j = 0; j * q <= s; ++j)
        next[s] = checked_add(next[s], checked_mul(ways[s - j * q], binomial(c + j - 1, j)));
    ways = std::move(next);
  }
  return ways[n];
}

std::vector<GroupoidClass> enumerate_groupoid_classes(std::size_t n, const Limits& limits) {
  if (n == 0) usage_error("BadParams", "order must be positive", {{"n", n}});
  if (n > limits.max_classify_order) cap_exceeded("classification order", limits.max_classify_order, n);

  std::map<std::size_t, std::vector<FiniteGroup>> groups;
  auto groups_of = [&](std::size_t m) -> const std::vector<FiniteGroup>& {
    auto it = groups.find(m);
    if (it == groups.end()) it = groups.emplace(m, small_groups(m)).first;
    return it->second;
  };
  // connected classes of each order q, by d then catalog position
  std::map<std::size_t, std::vector<ClassPart>> connected;
  for (std::size_t q = 1; q <= n; ++q)
    for (std::size_t d = 1; d * d <= q; ++d) {
      if (q % (d * d) != 0) continue;
      const std::size_t m = q / (d * d);
      const auto& gs = groups_of(m);
      for (std::size_t i = 0; i < gs.size(); ++i) connected[q].push_back({d, m, gs[i].name(), i});
    }

  std::vector<std::vector<ClassPart>> found;
  for (const auto& partition : partitions(n)) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;  // (q, multiplicity)
    for (auto q : partition) {
      if (!runs.empty() && runs.back().first == q)
        ++runs.back().second;
      else
        runs.push_back({q, 1});
    }
    std::vector<ClassPart> chosen;
    std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t run,
                                                                        std::size_t left,
                                                                        std::size_t from) {
      if (run == runs.size()) {
        found.push_back(chosen);
        return;
      }
      if (left == 0) {
        if (run + 1 < runs.size())
          rec(run + 1, runs[run + 1].second, 0);
        else
          rec(run + 1, 0, 0);
        return;
      }
      const auto& options = connected[runs[run].first];
      for (std::size_t i = from; i < options.size(); ++i) {
        chosen.push_back(options[i]);
        rec(run, left - 1, i);
        chosen.pop_back();
      }
    };
    rec(0, runs.front().second, 0);
  }

  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    std::vector<std::size_t> oa, ob;
    for (const auto& p : a) oa.push_back(p.order());
    for (const auto& p : b) ob.push_back(p.order());
    return oa > ob;
  });

  std::vector<GroupoidClass> out;
  for (auto& parts : found) {
    std::vector<ConnectedComponent> comps;
    std::size_t label = 0;
    for (const auto& p : parts) {
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < p.d; ++i) ids.push_back("e" + std::to_string(++label));
      comps.push_back({std::move(ids), groups_of(p.m)[p.group_index]});
    }
    out.push_back({std::move(parts), Groupoid(std::move(comps))});
  }
  return out;
}

std::vector<Groupoid> enumerate_groupoids(std::size_t n, const Limits& limits) {
  std::vector<Groupoid> out;
  for (auto& c : enumerate_groupoid_classes(n, limits)) out.push_back(std::move(c.groupoid));
  return out;
}

}  // namespace gpd
