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

#include <map>

#include "fairmatch/mechanism.hpp"

namespace fairmatch {

BMatching RealizeIntegralFlow(const Instance& inst, const GedDecomposition& ged,
                              const BipartiteConstruction& construction, const Flow& flow) {
  if (construction.kind != ConstructionKind::kIndivisible) {
    throw std::invalid_argument("lottery realization needs the indivisible construction");
  }
  if (!flow.IsIntegral()) throw std::invalid_argument("flow is not integral");

  BMatching m = BMatching::Empty(inst);
  // Everything except the V^U-V^O units is settled inside V^P and inside
  // each odd component. Those blocks share no edge, so one call does it.
  std::vector<std::int64_t> targets(inst.num_nodes(), 0);
  for (NodeIndex i : ged.perfect) targets[i] = inst.peak(i);
  for (ArcIndex arc = 0; arc < construction.provenance.size(); ++arc) {
    const auto& p = construction.provenance[arc];
    const std::int64_t units = ToInt64(flow.arc_flow[arc]);
    if (p.rule == ArcRule::kOverDemanded) {
      m.multiplicity[*p.edge] += units;
    } else if (p.rule == ArcRule::kComponent) {
      targets[construction.agents[*p.agent].node] = units;
    }
  }
  auto inner = RealizeTargets(inst, targets);
  if (!inner) throw std::logic_error("integral flow has no internal completion");
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) m.multiplicity[e] += inner->multiplicity[e];

  if (!m.IsFeasible(inst)) throw std::logic_error("realized b-matching exceeds a peak");
  auto utilities = m.Utilities(inst);
  for (const auto& slot : construction.agents) {
    if (Rational(utilities[slot.node]) != flow.arc_flow[slot.source_arc]) {
      throw std::logic_error("realized b-matching disagrees with the flow at '" +
                             inst.id(slot.node) + "'");
    }
  }
  return m;
}

Lottery BuildLottery(const Instance& inst, const GedDecomposition& ged,
                     const BipartiteConstruction& construction, const Flow& egalitarian_flow) {
  ConvexCombination mix = DecomposeMaxFlow(construction.net, egalitarian_flow);
  std::map<BMatching, Rational> merged;
  for (const auto& [g, weight] : mix.members) {
    merged[RealizeIntegralFlow(inst, ged, construction, g)] += weight;
  }
  Lottery lottery;
  lottery.expected.values.assign(inst.num_nodes(), Rational(0));
  for (auto& [m, p] : merged) {
    p.canonicalize();
    auto u = m.Utilities(inst);
    for (NodeIndex i = 0; i < inst.num_nodes(); ++i) lottery.expected.values[i] += p * u[i];
    lottery.entries.push_back({m, p});
  }
  for (auto& v : lottery.expected.values) v.canonicalize();
  return lottery;
}

IndivisibleOutcome SolveIndivisible(const Instance& inst, bool with_lottery) {
  IndivisibleOutcome out;
  out.ged = GedDecompose(inst);
  out.construction = BuildIndivisible(inst, out.ged);
  out.egalitarian = EgalitarianProfile(out.construction);
  out.profile = ToProfile(out.construction, out.egalitarian.allocation);
  if (with_lottery) {
    out.lottery = BuildLottery(inst, out.ged, out.construction, out.egalitarian.flow);
  }
  return out;
}

UtilityProfile DirectBipartiteProfile(const Instance& inst) {
  auto sides = BipartiteSides(inst);
  if (!sides) throw InstanceError("invalid input: graph is not bipartite");
  std::vector<bool> flipped(sides->size());
  for (std::size_t i = 0; i < sides->size(); ++i) flipped[i] = !(*sides)[i];

  auto suppliers = BuildDirectBipartite(inst, *sides);
  auto demanders = BuildDirectBipartite(inst, flipped);
  UtilityProfile a = ToProfile(suppliers, EgalitarianProfile(suppliers).allocation);
  UtilityProfile b = ToProfile(demanders, EgalitarianProfile(demanders).allocation);
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    if (!(*sides)[i]) a.values[i] = b.values[i];
  }
  return a;
}

LotterySampler::LotterySampler(const Lottery& lottery, std::uint64_t seed) : lottery_(lottery) {
  if (lottery.entries.empty()) throw std::invalid_argument("cannot sample an empty lottery");
  scale_ = 1;
  for (const auto& e : lottery.entries) {
    mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), e.probability.get_den_mpz_t());
  }
  mpz_class running = 0;
  for (const auto& e : lottery.entries) {
    running += e.probability.get_num() * (scale_ / e.probability.get_den());
    cumulative_.push_back(running);
  }
  if (running != scale_) throw std::invalid_argument("lottery probabilities do not sum to 1");
  gmp_randinit_mt(state_);
  mpz_class s(static_cast<unsigned long>(seed));
  gmp_randseed(state_, s.get_mpz_t());
}

LotterySampler::~LotterySampler() { gmp_randclear(state_); }

const BMatching& LotterySampler::Next() {
  mpz_class r;
  mpz_urandomm(r.get_mpz_t(), state_, scale_.get_mpz_t());
  for (std::size_t k = 0; k < cumulative_.size(); ++k) {
    if (r < cumulative_[k]) return lottery_.entries[k].matching;
  }
  return lottery_.entries.back().matching;
}

BMatching SampleLottery(const Lottery& lottery, std::uint64_t seed) {
  return LotterySampler(lottery, seed).Next();
}

}  // namespace fairmatch
