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

#include "fairmatch/flow.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace fairmatch {

Capacity Capacity::Finite(Rational value) {
  Capacity c;
  c.unbounded_ = false;
  c.value_ = std::move(value);
  return c;
}

FlowNetwork::FlowNetwork() {
  AddNode("source");
  AddNode("sink");
}

FlowNode FlowNetwork::AddNode(std::string name) {
  names_.push_back(std::move(name));
  out_.emplace_back();
  in_.emplace_back();
  return names_.size() - 1;
}

void FlowNetwork::CheckArc(FlowNode from, FlowNode to, const Capacity& cap) const {
  if (from >= num_nodes() || to >= num_nodes()) throw FlowError("arc endpoint out of range");
  if (from == to) throw FlowError("self-loop arc at " + names_[from]);
  if (to == kSource) throw FlowError("arc into the source from " + names_[from]);
  if (from == kSink) throw FlowError("arc out of the sink to " + names_[to]);
  if (cap.unbounded()) {
    if (from == kSource || to == kSink) {
      throw FlowError("unbounded arc touching source or sink: " + names_[from] + "->" + names_[to]);
    }
  } else if (cap.value() < 0) {
    throw FlowError("negative capacity on " + names_[from] + "->" + names_[to]);
  }
}

ArcIndex FlowNetwork::AddArc(FlowNode from, FlowNode to, Capacity cap) {
  CheckArc(from, to, cap);
  arcs_.push_back(Arc{from, to, std::move(cap)});
  out_[from].push_back(arcs_.size() - 1);
  in_[to].push_back(arcs_.size() - 1);
  return arcs_.size() - 1;
}

void FlowNetwork::SetCapacity(ArcIndex arc, Capacity cap) {
  CheckArc(arcs_.at(arc).from, arcs_.at(arc).to, cap);
  arcs_[arc].cap = std::move(cap);
}

bool FlowNetwork::HasIntegralCapacities() const {
  return std::all_of(arcs_.begin(), arcs_.end(), [](const Arc& a) {
    return a.cap.unbounded() || IsIntegral(a.cap.value());
  });
}

bool Flow::IsIntegral() const {
  return std::all_of(arc_flow.begin(), arc_flow.end(), [](const Rational& r) {
    return fairmatch::IsIntegral(r);
  });
}

namespace {

// One step in the residual network: arc `arc` traversed forward or backward.
struct Step {
  ArcIndex arc;
  bool forward;
};

// Residual capacity; nullopt means unbounded.
std::optional<Rational> Residual(const FlowNetwork& net, const Flow& flow, Step s) {
  if (!s.forward) return flow.arc_flow[s.arc];
  const auto& cap = net.arc(s.arc).cap;
  if (cap.unbounded()) return std::nullopt;
  return cap.value() - flow.arc_flow[s.arc];
}

bool HasResidual(const FlowNetwork& net, const Flow& flow, Step s) {
  auto r = Residual(net, flow, s);
  return !r || *r > 0;
}

// Breadth-first search over residual arcs from `start`; `reverse` walks arcs
// backwards (which nodes can reach `start`). Returns the predecessor step of
// every reached node.
std::vector<std::optional<Step>> ResidualSearch(const FlowNetwork& net, const Flow& flow,
                                                FlowNode start, bool reverse,
                                                std::vector<bool>& reached) {
  reached.assign(net.num_nodes(), false);
  std::vector<std::optional<Step>> pred(net.num_nodes());
  std::deque<FlowNode> queue{start};
  reached[start] = true;
  while (!queue.empty()) {
    FlowNode n = queue.front();
    queue.pop_front();
    // Forward search leaves n along out-arcs with spare capacity and along
    // in-arcs carrying flow. The reverse search asks which neighbor m has a
    // residual step m -> n.
    for (ArcIndex a : net.out_arcs(n)) {
      Step s{a, /*forward=*/!reverse};
      FlowNode m = net.arc(a).to;
      if (reached[m] || !HasResidual(net, flow, s)) continue;
      reached[m] = true;
      pred[m] = s;
      queue.push_back(m);
    }
    for (ArcIndex a : net.in_arcs(n)) {
      Step s{a, /*forward=*/reverse};
      FlowNode m = net.arc(a).from;
      if (reached[m] || !HasResidual(net, flow, s)) continue;
      reached[m] = true;
      pred[m] = s;
      queue.push_back(m);
    }
  }
  return pred;
}

}  // namespace

bool IsFeasible(const FlowNetwork& net, const Flow& flow) {
  if (flow.arc_flow.size() != net.num_arcs()) return false;
  std::vector<Rational> balance(net.num_nodes(), 0);
  for (ArcIndex a = 0; a < net.num_arcs(); ++a) {
    const auto& f = flow.arc_flow[a];
    if (f < 0 || !net.arc(a).cap.Admits(f)) return false;
    balance[net.arc(a).from] -= f;
    balance[net.arc(a).to] += f;
  }
  for (FlowNode n = 0; n < net.num_nodes(); ++n) {
    if (n == FlowNetwork::kSource || n == FlowNetwork::kSink) continue;
    if (balance[n] != 0) return false;
  }
  return -balance[FlowNetwork::kSource] == flow.value;
}

bool IsMaximum(const FlowNetwork& net, const Flow& flow) {
  if (!IsFeasible(net, flow)) return false;
  std::vector<bool> reached;
  ResidualSearch(net, flow, FlowNetwork::kSource, false, reached);
  return !reached[FlowNetwork::kSink];
}

Flow MaxFlow(const FlowNetwork& net) {
  Flow flow{std::vector<Rational>(net.num_arcs(), 0), 0};
  std::vector<bool> reached;
  for (;;) {
    auto pred = ResidualSearch(net, flow, FlowNetwork::kSource, false, reached);
    if (!reached[FlowNetwork::kSink]) break;
    std::optional<Rational> bottleneck;
    for (FlowNode n = FlowNetwork::kSink; n != FlowNetwork::kSource;) {
      Step s = *pred[n];
      auto r = Residual(net, flow, s);
      if (r && (!bottleneck || *r < *bottleneck)) bottleneck = *r;
      n = s.forward ? net.arc(s.arc).from : net.arc(s.arc).to;
    }
    if (!bottleneck) throw FlowError("unbounded source-sink path");
    for (FlowNode n = FlowNetwork::kSink; n != FlowNetwork::kSource;) {
      Step s = *pred[n];
      if (s.forward) {
        flow.arc_flow[s.arc] += *bottleneck;
        n = net.arc(s.arc).from;
      } else {
        flow.arc_flow[s.arc] -= *bottleneck;
        n = net.arc(s.arc).to;
      }
    }
    flow.value += *bottleneck;
  }
  return flow;
}

std::vector<bool> MinCut(const FlowNetwork& net, const Flow& flow) {
  if (!IsFeasible(net, flow)) throw FlowError("flow is not feasible");
  std::vector<bool> reached;
  ResidualSearch(net, flow, FlowNetwork::kSource, false, reached);
  if (reached[FlowNetwork::kSink]) throw FlowError("flow is not maximum");
  return reached;
}

std::vector<bool> MaximalMinCut(const FlowNetwork& net, const Flow& flow) {
  if (!IsFeasible(net, flow)) throw FlowError("flow is not feasible");
  std::vector<bool> reaches_sink;
  ResidualSearch(net, flow, FlowNetwork::kSink, true, reaches_sink);
  if (reaches_sink[FlowNetwork::kSource]) throw FlowError("flow is not maximum");
  std::vector<bool> side(net.num_nodes());
  for (FlowNode n = 0; n < net.num_nodes(); ++n) side[n] = !reaches_sink[n];
  return side;
}

Rational CutCapacity(const FlowNetwork& net, const std::vector<bool>& source_side) {
  Rational total = 0;
  for (const auto& arc : net.arcs()) {
    if (!source_side[arc.from] || source_side[arc.to]) continue;
    if (arc.cap.unbounded()) throw FlowError("unbounded arc crosses the cut");
    total += arc.cap.value();
  }
  return total;
}

std::optional<Flow> IntegralFlowWithBounds(const FlowNetwork& net,
                                           const std::vector<mpz_class>& lower,
                                           const std::vector<mpz_class>& upper,
                                           const mpz_class& value) {
  // Lower bounds are shifted into node imbalances; a super source and sink
  // then have to saturate their arcs. The return arc sink->source carries
  // exactly `value`, so it contributes only to the imbalances.
  FlowNetwork aux;
  for (FlowNode n = 0; n < net.num_nodes(); ++n) aux.AddNode(net.name(n));
  auto inner = [](FlowNode n) { return n + 2; };
  std::vector<Rational> excess(net.num_nodes(), 0);
  std::vector<ArcIndex> image(net.num_arcs());
  for (ArcIndex a = 0; a < net.num_arcs(); ++a) {
    if (upper[a] < lower[a]) return std::nullopt;
    const auto& arc = net.arc(a);
    image[a] = aux.AddArc(inner(arc.from), inner(arc.to),
                          Capacity::Finite(Rational(upper[a] - lower[a])));
    excess[arc.to] += lower[a];
    excess[arc.from] -= lower[a];
  }
  excess[FlowNetwork::kSource] += value;
  excess[FlowNetwork::kSink] -= value;
  Rational required = 0;
  for (FlowNode n = 0; n < net.num_nodes(); ++n) {
    if (excess[n] > 0) {
      aux.AddArc(FlowNetwork::kSource, inner(n), Capacity::Finite(excess[n]));
      required += excess[n];
    } else if (excess[n] < 0) {
      aux.AddArc(inner(n), FlowNetwork::kSink, Capacity::Finite(-excess[n]));
    }
  }
  Flow aux_flow = MaxFlow(aux);
  if (aux_flow.value != required) return std::nullopt;
  Flow out{std::vector<Rational>(net.num_arcs()), Rational(value)};
  for (ArcIndex a = 0; a < net.num_arcs(); ++a) {
    out.arc_flow[a] = Rational(lower[a]) + aux_flow.arc_flow[image[a]];
  }
  return out;
}

ConvexCombination DecomposeMaxFlow(const FlowNetwork& net, const Flow& flow) {
  if (!net.HasIntegralCapacities()) throw FlowError("invalid input: fractional capacity");
  if (!IsMaximum(net, flow)) throw FlowError("invalid input: flow is not maximum");
  if (!IsIntegral(flow.value)) throw FlowError("invalid input: fractional flow value");

  ConvexCombination out;
  Flow current = flow;
  Rational remaining = 1;
  const mpz_class value = flow.value.get_num();
  while (!current.IsIntegral()) {
    std::vector<mpz_class> lower(net.num_arcs()), upper(net.num_arcs());
    for (ArcIndex a = 0; a < net.num_arcs(); ++a) {
      lower[a] = Floor(current.arc_flow[a]);
      upper[a] = Ceil(current.arc_flow[a]);
    }
    auto vertex = IntegralFlowWithBounds(net, lower, upper, value);
    if (!vertex) throw FlowError("no integral maximum flow inside the rounding box");

    std::optional<Rational> theta;
    for (ArcIndex a = 0; a < net.num_arcs(); ++a) {
      const auto& f = current.arc_flow[a];
      if (IsIntegral(f)) continue;
      // Moving away from the chosen vertex, the residual reaches the opposite
      // end of the unit box after this much weight.
      Rational limit = vertex->arc_flow[a] == Rational(upper[a]) ? Rational(f - Rational(lower[a]))
                                                                 : Rational(Rational(upper[a]) - f);
      if (!theta || limit < *theta) theta = limit;
    }
    out.members.emplace_back(*vertex, remaining * *theta);
    const Rational keep = 1 - *theta;
    for (ArcIndex a = 0; a < net.num_arcs(); ++a) {
      current.arc_flow[a] = (current.arc_flow[a] - *theta * vertex->arc_flow[a]) / keep;
    }
    remaining *= keep;
  }
  out.members.emplace_back(current, remaining);
  return out;
}

}  // namespace fairmatch
