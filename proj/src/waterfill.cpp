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

#include <algorithm>
#include <map>
#include <numeric>

#include "fairmatch/mechanism.hpp"

namespace fairmatch {

namespace {

// Smallest lambda with sum_k min(lambda, caps[k]) == target. Requires
// 0 <= target < sum caps.
Rational SolveLevel(std::vector<Rational> caps, const Rational& target) {
  std::sort(caps.begin(), caps.end());
  Rational prefix = 0;
  const std::size_t n = caps.size();
  for (std::size_t k = 0; k < n; ++k) {
    // caps[0..k) saturated, the rest sit at lambda.
    Rational lambda = (target - prefix) / Rational(static_cast<long>(n - k));
    lambda.canonicalize();
    if (lambda <= caps[k]) return lambda;
    prefix += caps[k];
  }
  throw std::logic_error("water level above every peak");
}

class Filler {
 public:
  explicit Filler(const BipartiteConstruction& c) : c_(c), net_(c.net) {
    const std::size_t n = c.agents.size();
    peak_.reserve(n);
    for (const auto& a : c.agents) peak_.push_back(MakeRational(a.peak));
    frozen_.assign(n, std::nullopt);
    b_claimed_.assign(c.b_side.size(), false);
  }

  EgalitarianResult Run() {
    EgalitarianResult result;
    while (true) {
      std::vector<std::size_t> active;
      for (std::size_t a = 0; a < frozen_.size(); ++a) {
        if (!frozen_[a]) active.push_back(a);
      }
      if (active.empty()) break;

      Rational lambda = 0;
      for (auto a : active) lambda = Max(lambda, peak_[a]);
      bool stepped = false;
      Flow flow;
      while (true) {
        SetLevel(lambda);
        flow = MaxFlow(net_);
        if (flow.value == Demand(lambda)) break;
        lambda = NewtonStep(flow, lambda);
        stepped = true;
      }
      if (!stepped) {
        for (auto a : active) frozen_[a] = peak_[a];
        break;
      }

      // lambda is the first bottleneck; the maximal minimum cut gives X*.
      std::vector<bool> side = MaximalMinCut(net_, flow);
      Breakpoint bp;
      bp.lambda = lambda;
      bp.kind = BreakpointKind::kBottleneck;
      for (auto a : active) {
        if (side[c_.agents[a].a_node]) {
          frozen_[a] = Min(lambda, peak_[a]);
          bp.agents.push_back(a);
        }
      }
      for (std::size_t b = 0; b < c_.b_side.size(); ++b) {
        if (!b_claimed_[b] && side[c_.b_side[b].b_node]) {
          b_claimed_[b] = true;
          bp.demanders.push_back(b);
        }
      }
      if (bp.agents.empty()) throw std::logic_error("bottleneck with an empty agent set");
      result.breakpoints.push_back(std::move(bp));
    }

    // Agents never caught by a bottleneck stopped at their peaks.
    std::map<Rational, std::vector<std::size_t>> reached;
    std::vector<bool> in_bottleneck(frozen_.size(), false);
    for (const auto& bp : result.breakpoints) {
      for (auto a : bp.agents) in_bottleneck[a] = true;
    }
    for (std::size_t a = 0; a < frozen_.size(); ++a) {
      if (!in_bottleneck[a]) reached[peak_[a]].push_back(a);
    }
    for (auto& [level, agents] : reached) {
      result.breakpoints.push_back({level, BreakpointKind::kPeakReached, std::move(agents), {}});
    }
    std::stable_sort(result.breakpoints.begin(), result.breakpoints.end(),
                     [](const Breakpoint& x, const Breakpoint& y) { return x.lambda < y.lambda; });

    Rational total = 0;
    for (std::size_t a = 0; a < frozen_.size(); ++a) {
      result.allocation.push_back(*frozen_[a]);
      total += *frozen_[a];
      net_.SetCapacity(c_.agents[a].source_arc, Capacity::Finite(*frozen_[a]));
    }
    result.flow = MaxFlow(net_);
    if (result.flow.value != total || total != MaxFlow(c_.net).value) {
      throw std::logic_error("egalitarian allocation is not a maximum flow");
    }
    return result;
  }

 private:
  Rational SourceCap(std::size_t a, const Rational& lambda) const {
    return frozen_[a] ? *frozen_[a] : Min(lambda, peak_[a]);
  }

  void SetLevel(const Rational& lambda) {
    for (std::size_t a = 0; a < frozen_.size(); ++a) {
      net_.SetCapacity(c_.agents[a].source_arc, Capacity::Finite(SourceCap(a, lambda)));
    }
  }

  Rational Demand(const Rational& lambda) const {
    Rational t = 0;
    for (std::size_t a = 0; a < frozen_.size(); ++a) t += SourceCap(a, lambda);
    return t;
  }

  // The minimal minimum cut S violates sum_{X} min(lambda, b) <= K, where X
  // are the active agents inside S and K the cut capacity they must share.
  // The level at which S becomes tight is a strictly smaller candidate.
  Rational NewtonStep(const Flow& flow, const Rational& lambda) const {
    std::vector<bool> side = MinCut(net_, flow);
    Rational k = CutCapacity(net_, side);
    std::vector<Rational> caps;
    for (std::size_t a = 0; a < frozen_.size(); ++a) {
      const bool inside = side[c_.agents[a].a_node];
      if (!inside) {
        k -= SourceCap(a, lambda);
      } else if (frozen_[a]) {
        k -= *frozen_[a];
      } else {
        caps.push_back(peak_[a]);
      }
    }
    if (caps.empty() || k < 0) throw std::logic_error("inconsistent cut during water-filling");
    Rational next = SolveLevel(caps, k);
    if (next >= lambda) throw std::logic_error("water level did not decrease");
    return next;
  }

  const BipartiteConstruction& c_;
  FlowNetwork net_;
  std::vector<Rational> peak_;
  std::vector<std::optional<Rational>> frozen_;
  std::vector<bool> b_claimed_;
};

}  // namespace

EgalitarianResult EgalitarianProfile(const BipartiteConstruction& construction) {
  return Filler(construction).Run();
}

LpResult EgalitarianLp(const BipartiteConstruction& construction,
                       std::size_t max_component_agents) {
  const auto& c = construction;
  const std::size_t n = c.agents.size();
  if (max_component_agents > 30) {
    throw std::invalid_argument("subset enumeration is limited to 30 agents per component");
  }

  // Connected pieces of the network once source and sink are removed.
  std::vector<std::size_t> parent(c.net.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& arc : c.net.arcs()) {
    if (arc.from == FlowNetwork::kSource || arc.to == FlowNetwork::kSink) continue;
    parent[find(arc.from)] = find(arc.to);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t a = 0; a < n; ++a) groups[find(c.agents[a].a_node)].push_back(a);
  std::vector<std::vector<std::size_t>> comps;
  for (auto& [root, agents] : groups) {
    if (agents.size() > max_component_agents) {
      throw UnsupportedError("component with " + std::to_string(agents.size()) +
                             " agents exceeds the subset enumeration limit of " +
                             std::to_string(max_component_agents));
    }
    comps.push_back(std::move(agents));
  }

  FlowNetwork probe = c.net;
  std::vector<std::map<std::uint32_t, Rational>> rank_cache(comps.size());
  auto rank = [&](std::size_t k, std::uint32_t mask) -> const Rational& {
    auto it = rank_cache[k].find(mask);
    if (it != rank_cache[k].end()) return it->second;
    for (std::size_t a = 0; a < n; ++a) {
      probe.SetCapacity(c.agents[a].source_arc, Capacity::Finite(0));
    }
    for (std::size_t t = 0; t < comps[k].size(); ++t) {
      if (mask >> t & 1u) {
        const auto& slot = c.agents[comps[k][t]];
        probe.SetCapacity(slot.source_arc, Capacity::Finite(MakeRational(slot.peak)));
      }
    }
    return rank_cache[k].emplace(mask, MaxFlow(probe).value).first->second;
  };

  LpResult result;
  std::vector<std::optional<Rational>> fixed(n);
  std::size_t remaining = n;
  while (remaining > 0) {
    std::optional<Rational> level;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const std::uint32_t full = (std::uint32_t{1} << comps[k].size()) - 1;
      for (std::uint32_t mask = 1; mask <= full; ++mask) {
        Rational used = 0;
        long open = 0;
        for (std::size_t t = 0; t < comps[k].size(); ++t) {
          if (!(mask >> t & 1u)) continue;
          if (const auto& x = fixed[comps[k][t]]) {
            used += *x;
          } else {
            ++open;
          }
        }
        if (open == 0) continue;
        Rational bound = (rank(k, mask) - used) / Rational(open);
        bound.canonicalize();
        if (!level || bound < *level) level = bound;
      }
    }

    // At x_R = level, an agent is frozen iff some tight set contains it.
    LpRound round{*level, {}};
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const std::uint32_t full = (std::uint32_t{1} << comps[k].size()) - 1;
      std::uint32_t tight_union = 0;
      for (std::uint32_t mask = 1; mask <= full; ++mask) {
        Rational load = 0;
        for (std::size_t t = 0; t < comps[k].size(); ++t) {
          if (mask >> t & 1u) load += fixed[comps[k][t]] ? *fixed[comps[k][t]] : *level;
        }
        if (load == rank(k, mask)) tight_union |= mask;
      }
      for (std::size_t t = 0; t < comps[k].size(); ++t) {
        const std::size_t a = comps[k][t];
        if ((tight_union >> t & 1u) && !fixed[a]) round.tight.push_back(a);
      }
    }
    if (round.tight.empty()) throw std::logic_error("LP round froze no agent");
    std::sort(round.tight.begin(), round.tight.end());
    for (auto a : round.tight) fixed[a] = *level;
    remaining -= round.tight.size();
    result.rounds.push_back(std::move(round));
  }
  for (auto& x : fixed) result.allocation.push_back(*x);
  return result;
}

}  // namespace fairmatch
