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

#include "fairmatch/mechanism.hpp"

namespace fairmatch {

DivisibleOutcome EgalitarianDivisible(const Instance& inst) {
  BipartiteConstruction c = BuildDivisible(inst);
  DivisibleOutcome out;
  out.supplier_side = EgalitarianProfile(c);
  out.profile = ToProfile(c, out.supplier_side.allocation);

  // Supplier-side leximin first; then both sides are pinned to x at once.
  // Any such flow symmetrizes into an exchange with utilities exactly x.
  FlowNetwork joint = c.net;
  Rational total = 0;
  for (std::size_t a = 0; a < c.agents.size(); ++a) {
    const Rational& x = out.supplier_side.allocation[a];
    joint.SetCapacity(c.agents[a].source_arc, Capacity::Finite(x));
    total += x;
  }
  for (const auto& b : c.b_side) {
    joint.SetCapacity(b.sink_arc, Capacity::Finite(out.profile.values[*b.node]));
  }
  out.flow = MaxFlow(joint);
  if (out.flow.value != total) {
    throw std::logic_error("supplier allocation has no symmetric realization");
  }

  out.exchange.assign(inst.num_edges(), Rational(0));
  for (ArcIndex arc = 0; arc < c.provenance.size(); ++arc) {
    const auto& p = c.provenance[arc];
    if (p.rule == ArcRule::kEdge) out.exchange[*p.edge] += out.flow.arc_flow[arc];
  }
  for (auto& f : out.exchange) {
    f /= 2;
    f.canonicalize();
  }
  return out;
}

std::vector<std::vector<MarginalOutcome>> ProbabilisticMarginals(const UtilityProfile& profile) {
  std::vector<std::vector<MarginalOutcome>> out;
  for (const auto& x : profile.values) {
    mpz_class lo = Floor(x);
    Rational frac = x - Rational(lo);
    std::vector<MarginalOutcome> dist;
    if (frac != 1) dist.push_back({lo, Rational(1) - frac});
    if (frac != 0) dist.push_back({lo + 1, frac});
    out.push_back(std::move(dist));
  }
  return out;
}

}  // namespace fairmatch
