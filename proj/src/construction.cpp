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

#include <deque>

#include "fairmatch/mechanism.hpp"

namespace fairmatch {

namespace {

Capacity EdgeCapacity(const Edge& e) {
  return e.cap ? Capacity::Finite(MakeRational(*e.cap)) : Capacity::Unbounded();
}

std::size_t AddAgent(BipartiteConstruction& c, const Instance& inst, NodeIndex i,
                     const std::string& label) {
  AgentSlot slot;
  slot.node = i;
  slot.peak = inst.peak(i);
  slot.a_node = c.net.AddNode(label);
  slot.source_arc = c.net.AddArc(FlowNetwork::kSource, slot.a_node,
                                 Capacity::Finite(MakeRational(slot.peak)));
  c.provenance.push_back({ArcRule::kSource, std::nullopt, c.agents.size(), std::nullopt});
  c.agent_of[i] = c.agents.size();
  c.agents.push_back(slot);
  return c.agents.size() - 1;
}

std::size_t AddBNode(BipartiteConstruction& c, const std::string& label, BRole role,
                     std::optional<NodeIndex> node, std::optional<std::size_t> component,
                     std::int64_t capacity) {
  BSlot slot;
  slot.b_node = c.net.AddNode(label);
  slot.sink_arc = c.net.AddArc(slot.b_node, FlowNetwork::kSink,
                               Capacity::Finite(MakeRational(capacity)));
  slot.role = role;
  slot.node = node;
  slot.component = component;
  slot.capacity = capacity;
  c.provenance.push_back({ArcRule::kSink, std::nullopt, std::nullopt, c.b_side.size()});
  c.b_side.push_back(slot);
  return c.b_side.size() - 1;
}

void AddCross(BipartiteConstruction& c, std::size_t agent, std::size_t b, Capacity cap,
              ArcRule rule, std::optional<EdgeIndex> edge) {
  c.net.AddArc(c.agents[agent].a_node, c.b_side[b].b_node, std::move(cap));
  c.provenance.push_back({rule, edge, agent, b});
}

BipartiteConstruction Empty(ConstructionKind kind, const Instance& inst) {
  BipartiteConstruction c;
  c.kind = kind;
  c.agent_of.assign(inst.num_nodes(), std::nullopt);
  c.num_instance_nodes = inst.num_nodes();
  return c;
}

}  // namespace

BipartiteConstruction BuildDivisible(const Instance& inst) {
  BipartiteConstruction c = Empty(ConstructionKind::kDivisible, inst);
  std::vector<std::size_t> mirror(inst.num_nodes());
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) AddAgent(c, inst, i, "a:" + inst.id(i));
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    mirror[i] = AddBNode(c, "b:" + inst.id(i), BRole::kMirror, i, std::nullopt, inst.peak(i));
  }
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    const auto& edge = inst.edge(e);
    AddCross(c, *c.agent_of[edge.u], mirror[edge.v], EdgeCapacity(edge), ArcRule::kEdge, e);
    AddCross(c, *c.agent_of[edge.v], mirror[edge.u], EdgeCapacity(edge), ArcRule::kEdge, e);
  }
  return c;
}

BipartiteConstruction BuildIndivisible(const Instance& inst, const GedDecomposition& ged) {
  if (!inst.IsUncapacitated()) {
    throw UnsupportedError("the indivisible mechanism requires uncapacitated edges");
  }
  if (ged.node_class.size() != inst.num_nodes()) {
    throw std::invalid_argument("decomposition does not match the instance");
  }
  BipartiteConstruction c = Empty(ConstructionKind::kIndivisible, inst);
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) AddAgent(c, inst, i, "a:" + inst.id(i));

  // Rule (1): private mirror c_i for perfectly matched and over-demanded agents.
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    if (ged.node_class[i] == GedClass::kUnder) continue;
    auto b = AddBNode(c, "c:" + inst.id(i), BRole::kMirror, i, std::nullopt, inst.peak(i));
    AddCross(c, *c.agent_of[i], b, Capacity::Unbounded(), ArcRule::kMirror, std::nullopt);
  }
  // Rule (2): c'_j collects the units j in V^O exchanges with V^U.
  std::vector<std::optional<std::size_t>> over_slot(inst.num_nodes());
  for (NodeIndex j : ged.over) {
    over_slot[j] = AddBNode(c, "c':" + inst.id(j), BRole::kOverDemanded, j, std::nullopt,
                            inst.peak(j));
  }
  for (NodeIndex i : ged.under) {
    for (const auto& [j, e] : inst.incident(i)) {
      if (over_slot[j]) {
        AddCross(c, *c.agent_of[i], *over_slot[j], Capacity::Unbounded(),
                 ArcRule::kOverDemanded, e);
      }
    }
  }
  // Rule (3): one sink per odd component with at least two members.
  for (std::size_t k = 0; k < ged.odd_components.size(); ++k) {
    if (!ged.internal_cap[k]) continue;
    auto b = AddBNode(c, "B:C" + std::to_string(k + 1), BRole::kComponentSink, std::nullopt, k,
                      *ged.internal_cap[k]);
    for (NodeIndex i : ged.odd_components[k]) {
      AddCross(c, *c.agent_of[i], b, Capacity::Unbounded(), ArcRule::kComponent, std::nullopt);
    }
  }
  return c;
}

BipartiteConstruction BuildDirectBipartite(const Instance& inst,
                                           const std::vector<bool>& supplier) {
  if (supplier.size() != inst.num_nodes()) throw InstanceError("side vector size mismatch");
  BipartiteConstruction c = Empty(ConstructionKind::kDirectBipartite, inst);
  std::vector<std::optional<std::size_t>> demander(inst.num_nodes());
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    if (supplier[i]) AddAgent(c, inst, i, "s:" + inst.id(i));
  }
  for (NodeIndex j = 0; j < inst.num_nodes(); ++j) {
    if (!supplier[j]) {
      demander[j] = AddBNode(c, "d:" + inst.id(j), BRole::kDemander, j, std::nullopt,
                             inst.peak(j));
    }
  }
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    const auto& edge = inst.edge(e);
    if (supplier[edge.u] == supplier[edge.v]) {
      throw InstanceError("edge '" + inst.id(edge.u) + "'-'" + inst.id(edge.v) +
                          "' does not cross the bipartition");
    }
    NodeIndex s = supplier[edge.u] ? edge.u : edge.v;
    NodeIndex d = supplier[edge.u] ? edge.v : edge.u;
    AddCross(c, *c.agent_of[s], *demander[d], EdgeCapacity(edge), ArcRule::kEdge, e);
  }
  return c;
}

std::optional<std::vector<bool>> BipartiteSides(const Instance& inst) {
  std::vector<std::optional<bool>> side(inst.num_nodes());
  for (NodeIndex start = 0; start < inst.num_nodes(); ++start) {
    if (side[start]) continue;
    side[start] = true;
    std::deque<NodeIndex> queue{start};
    while (!queue.empty()) {
      NodeIndex i = queue.front();
      queue.pop_front();
      for (const auto& [j, e] : inst.incident(i)) {
        if (!side[j]) {
          side[j] = !*side[i];
          queue.push_back(j);
        } else if (*side[j] == *side[i]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<bool> out(inst.num_nodes());
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) out[i] = *side[i];
  return out;
}

UtilityProfile ToProfile(const BipartiteConstruction& construction,
                         const std::vector<Rational>& allocation) {
  UtilityProfile p;
  p.values.assign(construction.num_instance_nodes, Rational(0));
  for (std::size_t a = 0; a < construction.agents.size(); ++a) {
    p.values[construction.agents[a].node] = allocation.at(a);
  }
  return p;
}

}  // namespace fairmatch
