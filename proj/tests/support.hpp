// Copyright 2026 The fairmatch Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Fixtures and small independent reference solvers shared by the tests.

#ifndef FAIRMATCH_TESTS_SUPPORT_HPP_
#define FAIRMATCH_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "fairmatch/flow.hpp"
#include "fairmatch/instance.hpp"
#include "fairmatch/matching.hpp"

namespace fairmatch::testing {

inline Instance Make(std::vector<std::pair<std::string, std::int64_t>> peaks,
                     std::vector<std::pair<std::string, std::string>> edges,
                     std::string name = "t") {
  std::vector<NodeSpec> nodes;
  for (auto& [id, p] : peaks) nodes.push_back({id, p});
  std::vector<EdgeSpec> es;
  for (auto& [u, v] : edges) es.push_back({u, v, std::nullopt});
  return Instance::Create(std::move(name), std::move(nodes), std::move(es));
}

// Nodes v1..vn with the given peaks over an index edge list.
inline Instance FromEdges(const std::vector<std::int64_t>& peaks,
                          const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::pair<std::string, std::int64_t>> p;
  for (std::size_t i = 0; i < peaks.size(); ++i) p.emplace_back("v" + std::to_string(i + 1), peaks[i]);
  std::vector<std::pair<std::string, std::string>> e;
  for (auto [a, b] : edges) e.emplace_back("v" + std::to_string(a + 1), "v" + std::to_string(b + 1));
  return Make(p, e);
}

inline Instance Triangle() { return Make({{"a", 1}, {"b", 1}, {"c", 1}}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}); }

inline Instance Fig1() {
  return Make({{"a1", 2}, {"a2", 5}, {"a3", 3}, {"a4", 2}},
              {{"a1", "a3"}, {"a1", "a4"}, {"a2", "a4"}, {"a2", "a3"}, {"a4", "a3"}});
}

inline Instance Fig2() {
  const std::int64_t peaks[] = {2, 3, 2, 4, 4, 5, 2, 4, 2, 2, 2, 2, 2, 2, 2};
  std::vector<std::pair<std::string, std::int64_t>> p;
  for (int i = 0; i < 15; ++i) p.emplace_back("s" + std::to_string(i + 1), peaks[i]);
  const int edges[][2] = {{1, 2},  {2, 3},   {3, 1},   {6, 2},   {6, 4},   {6, 5},
                          {7, 8},  {9, 10},  {10, 11}, {11, 12}, {12, 9},  {9, 11},
                          {10, 12}, {13, 14}, {14, 15}, {15, 13}, {13, 7}, {12, 6}};
  std::vector<std::pair<std::string, std::string>> e;
  for (auto& [a, b] : edges) e.emplace_back("s" + std::to_string(a), "s" + std::to_string(b));
  return Make(p, e, "fig2");
}

inline Instance Path(std::size_t n, std::int64_t peak = 1) {
  std::vector<std::pair<std::string, std::int64_t>> p;
  std::vector<std::pair<std::string, std::string>> e;
  for (std::size_t i = 1; i <= n; ++i) {
    p.emplace_back("s" + std::to_string(i), peak);
    if (i > 1) e.emplace_back("s" + std::to_string(i - 1), "s" + std::to_string(i));
  }
  return Make(p, e, "path");
}

inline Rational Q(std::int64_t p, std::int64_t q = 1) { return MakeRational(p, q); }

inline Rational ValueOf(const Instance& inst, const UtilityProfile& profile, const std::string& id) {
  return profile.values[inst.IndexOf(id)];
}

// Minimum cut capacity by trying every source side; tiny networks only.
inline Rational BruteForceMinCut(const FlowNetwork& net) {
  const std::size_t inner = net.num_nodes() - 2;
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inner); ++mask) {
    std::vector<bool> side(net.num_nodes(), false);
    side[FlowNetwork::kSource] = true;
    for (std::size_t k = 0; k < inner; ++k) side[k + 2] = mask >> k & 1u;
    bool infinite = false;
    Rational cap = 0;
    for (const auto& arc : net.arcs()) {
      if (side[arc.from] && !side[arc.to]) {
        if (arc.cap.unbounded()) {
          infinite = true;
          break;
        }
        cap += arc.cap.value();
      }
    }
    if (!infinite && (!best || cap < *best)) best = cap;
  }
  return *best;
}

// Maximum matching size by exhaustive branching on the lowest free vertex.
inline std::size_t BruteForceMatchingSize(const UnitGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.num_vertices);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> used(g.num_vertices, false);
  std::function<std::size_t(std::size_t)> go = [&](std::size_t v) -> std::size_t {
    while (v < g.num_vertices && used[v]) ++v;
    if (v == g.num_vertices) return 0;
    used[v] = true;
    std::size_t best = go(v + 1);  // v stays single
    for (auto w : adj[v]) {
      if (used[w]) continue;
      used[w] = true;
      best = std::max(best, 1 + go(v + 1));
      used[w] = false;
    }
    used[v] = false;
    return best;
  };
  return go(0);
}

// Node permutations of an instance that preserve edges and peaks.
inline std::vector<std::vector<NodeIndex>> Automorphisms(const Instance& inst) {
  std::vector<NodeIndex> perm(inst.num_nodes());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<NodeIndex>> out;
  do {
    bool ok = true;
    for (NodeIndex i = 0; i < inst.num_nodes() && ok; ++i) ok = inst.peak(i) == inst.peak(perm[i]);
    for (const auto& e : inst.edges()) {
      if (!ok) break;
      ok = inst.FindEdge(perm[e.u], perm[e.v]).has_value();
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace fairmatch::testing

#endif  // FAIRMATCH_TESTS_SUPPORT_HPP_
