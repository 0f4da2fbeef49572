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

#include "fairmatch/matching.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace fairmatch {

namespace {

using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
using Vertex = boost::graph_traits<Graph>::vertex_descriptor;
using IndexMap = boost::property_map<Graph, boost::vertex_index_t>::type;

Graph BuildGraph(const UnitGraph& unit) {
  Graph g(unit.num_vertices);
  for (const auto& [a, b] : unit.edges) boost::add_edge(a, b, g);
  return g;
}

std::vector<Vertex> SolveMates(const Graph& g) {
  std::vector<Vertex> mate(boost::num_vertices(g));
  boost::edmonds_maximum_cardinality_matching(g, mate.data());
  return mate;
}

UnitMatching PairsFromMates(const std::vector<Vertex>& mate) {
  UnitMatching pairs;
  const Vertex none = boost::graph_traits<Graph>::null_vertex();
  for (std::size_t v = 0; v < mate.size(); ++v) {
    if (mate[v] != none && v < mate[v]) pairs.emplace_back(v, mate[v]);
  }
  return pairs;
}

UnitGraph ExpandedGraph(const ExpandedInstance& expanded) {
  return UnitGraph{expanded.num_copies(), expanded.edges};
}

}  // namespace

UnitMatching MaxCardinalityMatching(const UnitGraph& graph) {
  return PairsFromMates(SolveMates(BuildGraph(graph)));
}

UnitMatching MaxMatching(const Instance& inst) {
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    if (inst.peak(i) != 1) {
      throw InstanceError("invalid input: node '" + inst.id(i) + "' has non-unit peak");
    }
  }
  UnitGraph g{inst.num_nodes(), {}};
  for (const auto& e : inst.edges()) g.edges.emplace_back(e.u, e.v);
  return MaxCardinalityMatching(g);
}

BMatching MaxBMatching(const Instance& inst) {
  ExpandedInstance expanded = ExpandNodes(inst);
  return ContractMatching(expanded, MaxCardinalityMatching(ExpandedGraph(expanded)));
}

GedDecomposition GedDecompose(const Instance& inst) {
  ExpandedInstance expanded = ExpandNodes(inst);
  Graph g = BuildGraph(ExpandedGraph(expanded));
  std::vector<Vertex> mate = SolveMates(g);

  boost::edmonds_augmenting_path_finder<Graph, Vertex*, IndexMap> search(
      g, mate.data(), boost::get(boost::vertex_index, g));
  if (search.augment_matching()) {
    throw std::logic_error("blossom solver returned a non-maximum matching");
  }
  std::vector<int> state(expanded.num_copies());
  search.get_vertex_state_map(state.data());

  // Copies of one node are interchangeable, so they share a label.
  GedDecomposition ged;
  ged.node_class.assign(inst.num_nodes(), GedClass::kPerfect);
  std::vector<bool> even(inst.num_nodes(), false);
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    const auto& copies = expanded.copies[i];
    if (copies.empty()) continue;
    const bool first_even = state[copies.front()] == boost::graph::detail::V_EVEN;
    for (auto c : copies) {
      if ((state[c] == boost::graph::detail::V_EVEN) != first_even) {
        throw std::logic_error("copies of '" + inst.id(i) + "' received different labels");
      }
    }
    even[i] = first_even;
  }
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    if (even[i]) {
      ged.node_class[i] = GedClass::kUnder;
      continue;
    }
    for (const auto& [j, e] : inst.incident(i)) {
      if (even[j] && !expanded.copies[i].empty()) ged.node_class[i] = GedClass::kOver;
    }
  }
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    switch (ged.node_class[i]) {
      case GedClass::kUnder: ged.under.push_back(i); break;
      case GedClass::kOver: ged.over.push_back(i); break;
      case GedClass::kPerfect: ged.perfect.push_back(i); break;
    }
  }

  ged.component_of.assign(inst.num_nodes(), std::nullopt);
  for (NodeIndex start : ged.under) {
    if (ged.component_of[start]) continue;
    const std::size_t id = ged.odd_components.size();
    std::vector<NodeIndex> members;
    std::deque<NodeIndex> queue{start};
    ged.component_of[start] = id;
    while (!queue.empty()) {
      NodeIndex i = queue.front();
      queue.pop_front();
      members.push_back(i);
      for (const auto& [j, e] : inst.incident(i)) {
        if (ged.node_class[j] == GedClass::kUnder && !ged.component_of[j]) {
          ged.component_of[j] = id;
          queue.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    std::int64_t peak_sum = 0;
    for (auto i : members) peak_sum += inst.peak(i);
    ged.internal_cap.push_back(members.size() >= 2 ? std::optional<std::int64_t>(peak_sum - 1)
                                                   : std::nullopt);
    ged.odd_components.push_back(std::move(members));
  }
  return ged;
}

std::optional<BMatching> RealizeTargets(const Instance& inst,
                                        const std::vector<std::int64_t>& targets) {
  if (targets.size() != inst.num_nodes()) throw InstanceError("target vector size mismatch");
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    if (targets[i] < 0 || targets[i] > inst.peak(i)) {
      throw InstanceError("target for '" + inst.id(i) + "' outside [0, peak]");
    }
  }
  const std::int64_t wanted = std::accumulate(targets.begin(), targets.end(), std::int64_t{0});
  if (wanted % 2 != 0) return std::nullopt;
  Instance reduced = inst.WithPeaks(targets);
  BMatching m = MaxBMatching(reduced);
  if (m.TotalUtility() != wanted) return std::nullopt;
  return m;
}

}  // namespace fairmatch
