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

#include "fairmatch/verify.hpp"

#include <algorithm>

#include "fairmatch/mechanism.hpp"

namespace fairmatch {

bool VerifyReport::AllPassed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

class Recorder {
 public:
  explicit Recorder(VerifyReport& report) : report_(report) {}
  void Check(std::string name, bool ok, std::string detail = "") {
    report_.checks.push_back({std::move(name), ok, std::move(detail)});
  }

 private:
  VerifyReport& report_;
};

std::vector<Rational> ToRationals(const std::vector<std::int64_t>& xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.emplace_back(static_cast<long>(x));
  return out;
}

// Σ_{X*} min(λ*, s) = Σ_{f(X*)} cap at every bottleneck; meaningful only when
// no finite cross arc can leave the cut.
bool BottleneckIdentity(const BipartiteConstruction& c, const EgalitarianResult& r) {
  for (const auto& bp : r.breakpoints) {
    if (bp.kind != BreakpointKind::kBottleneck) continue;
    Rational supply = 0, demand = 0;
    for (auto a : bp.agents) supply += Min(bp.lambda, MakeRational(c.agents[a].peak));
    for (auto b : bp.demanders) demand += c.b_side[b].capacity;
    if (supply != demand) return false;
  }
  return true;
}

bool AllCrossArcsUnbounded(const BipartiteConstruction& c) {
  for (const auto& arc : c.net.arcs()) {
    if (arc.from != FlowNetwork::kSource && arc.to != FlowNetwork::kSink && !arc.cap.unbounded()) {
      return false;
    }
  }
  return true;
}

bool LpAgrees(const BipartiteConstruction& c, const EgalitarianResult& r, std::string& why) {
  try {
    return EgalitarianLp(c).allocation == r.allocation;
  } catch (const UnsupportedError& e) {
    why = std::string("skipped: ") + e.what();
    return true;  // too large to enumerate; reported as skipped in the detail
  }
}

void CheckDivisible(const Instance& inst, Recorder& rec) {
  DivisibleOutcome d = EgalitarianDivisible(inst);
  BipartiteConstruction c = BuildDivisible(inst);
  rec.Check("divisible: profile within peaks", d.profile.WithinPeaks(inst));
  std::vector<Rational> from_exchange(inst.num_nodes(), Rational(0));
  bool caps_ok = true;
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    from_exchange[inst.edge(e).u] += d.exchange[e];
    from_exchange[inst.edge(e).v] += d.exchange[e];
    if (d.exchange[e] < 0 || (inst.edge(e).cap && d.exchange[e] > *inst.edge(e).cap)) caps_ok = false;
  }
  rec.Check("divisible: exchange reproduces profile", from_exchange == d.profile.values);
  rec.Check("divisible: exchange within edge capacities", caps_ok);
  rec.Check("divisible: total equals doubled-network max flow",
            d.profile.Total() == MaxFlow(c.net).value);
  std::string why;
  rec.Check("divisible: water-filling equals LP_k", LpAgrees(c, d.supplier_side, why), why);
  if (AllCrossArcsUnbounded(c)) {
    rec.Check("divisible: bottleneck identity at every type-2 breakpoint",
              BottleneckIdentity(c, d.supplier_side));
  }
}

void CheckIndivisible(const Instance& inst, const VerifyOptions& options, Recorder& rec) {
  IndivisibleOutcome out = SolveIndivisible(inst);
  const auto& ged = out.ged;

  bool partition_ok = true;
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    bool under_neighbor = false;
    for (const auto& [j, e] : inst.incident(i)) {
      if (ged.node_class[j] == GedClass::kUnder) under_neighbor = true;
    }
    if (ged.node_class[i] == GedClass::kOver && !under_neighbor) partition_ok = false;
    if (ged.node_class[i] == GedClass::kPerfect && under_neighbor) partition_ok = false;
  }
  rec.Check("ged: over-demanded nodes touch V^U, perfect nodes do not", partition_ok);

  const std::int64_t best = MaxBMatching(inst).TotalUtility();
  rec.Check("indivisible: total equals maximum b-matching",
            out.profile.Total() == Rational(static_cast<long>(best)));
  rec.Check("indivisible: profile within peaks", out.profile.WithinPeaks(inst));
  std::string why;
  rec.Check("indivisible: water-filling equals LP_k", LpAgrees(out.construction, out.egalitarian, why),
            why);
  rec.Check("indivisible: bottleneck identity at every type-2 breakpoint",
            BottleneckIdentity(out.construction, out.egalitarian));

  ConvexCombination mix = DecomposeMaxFlow(out.construction.net, out.egalitarian.flow);
  std::vector<Rational> rebuilt(out.construction.net.num_arcs(), Rational(0));
  Rational weight = 0;
  bool members_ok = true;
  for (const auto& [g, w] : mix.members) {
    weight += w;
    members_ok = members_ok && g.IsIntegral() && IsMaximum(out.construction.net, g);
    for (ArcIndex a = 0; a < rebuilt.size(); ++a) rebuilt[a] += w * g.arc_flow[a];
  }
  rec.Check("lottery: decomposition reproduces the egalitarian flow",
            weight == 1 && rebuilt == out.egalitarian.flow.arc_flow);
  rec.Check("lottery: every component is an integral maximum flow", members_ok);

  Rational total_p = 0;
  bool entries_ok = true;
  for (const auto& entry : out.lottery.entries) {
    total_p += entry.probability;
    entries_ok = entries_ok && entry.probability > 0 && entry.matching.IsFeasible(inst) &&
                 entry.matching.TotalUtility() == best;
  }
  rec.Check("lottery: probabilities sum to 1", total_p == 1);
  rec.Check("lottery: every entry is a maximum b-matching", entries_ok);
  rec.Check("lottery: expectation equals profile", out.lottery.expected == out.profile);

  if (!options.oracle) return;
  const auto limit = options.oracle_limit;
  std::vector<char> expected = GedOracle(inst, limit);
  bool ged_ok = true;
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    const char got = ged.node_class[i] == GedClass::kUnder  ? 'U'
                     : ged.node_class[i] == GedClass::kOver ? 'O'
                                                            : 'P';
    if (got != expected[i]) ged_ok = false;
  }
  rec.Check("oracle: GED classes", ged_ok);
  rec.Check("oracle: maximum total utility",
            MaxTotalUtility(inst, limit) == best);

  std::vector<std::vector<std::int64_t>> pareto;
  for (const auto& p : ParetoProfiles(inst, limit)) pareto.push_back(p.utilities);
  rec.Check("oracle: Pareto profiles equal maximum b-matching profiles",
            pareto == MaximumProfiles(inst, limit));

  bool lorenz_ok = true;
  for (const auto& p : pareto) lorenz_ok = lorenz_ok && LorenzDominates(out.profile.values, ToRationals(p));
  rec.Check("oracle: egalitarian profile Lorenz-dominates every Pareto profile", lorenz_ok);

  bool components_ok = true;
  for (std::size_t k = 0; k < ged.odd_components.size(); ++k) {
    if (!ged.internal_cap[k]) continue;
    if (MaxTotalUtility(inst.Induced(ged.odd_components[k]), limit) != *ged.internal_cap[k]) {
      components_ok = false;
    }
  }
  rec.Check("oracle: odd-component internal maximum is sum of peaks minus one", components_ok);
}

}  // namespace

VerifyReport VerifyInstance(const Instance& inst, const VerifyOptions& options) {
  VerifyReport report;
  Recorder rec(report);
  CheckDivisible(inst, rec);
  if (inst.IsUncapacitated()) CheckIndivisible(inst, options, rec);
  return report;
}

}  // namespace fairmatch
