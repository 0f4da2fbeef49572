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

#include "fairmatch/json_io.hpp"

namespace fairmatch {

namespace {

Json Ids(const Instance& inst, const std::vector<NodeIndex>& nodes) {
  Json out = Json::array();
  for (auto i : nodes) out.push_back(inst.id(i));
  return out;
}

const char* RuleName(ArcRule rule) {
  switch (rule) {
    case ArcRule::kSource: return "source";
    case ArcRule::kSink: return "sink";
    case ArcRule::kEdge: return "edge";
    case ArcRule::kMirror: return "mirror";
    case ArcRule::kOverDemanded: return "over-demanded";
    case ArcRule::kComponent: return "component";
  }
  return "?";
}

const char* VerdictName(ManipulationVerdict v) {
  switch (v) {
    case ManipulationVerdict::kProfitable: return "profitable";
    case ManipulationVerdict::kUnprofitable: return "unprofitable";
    case ManipulationVerdict::kMixed: return "mixed";
  }
  return "?";
}

}  // namespace

Json ProfileJson(const Instance& inst, const UtilityProfile& profile) {
  Json out = Json::object();
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) out[inst.id(i)] = ToString(profile.values[i]);
  return out;
}

Json GedJson(const Instance& inst, const GedDecomposition& ged) {
  Json components = Json::array();
  for (const auto& c : ged.odd_components) components.push_back(Ids(inst, c));
  return Json{{"under", Ids(inst, ged.under)},
              {"over", Ids(inst, ged.over)},
              {"perfect", Ids(inst, ged.perfect)},
              {"components", components}};
}

Json MatchingJson(const Instance& inst, const BMatching& m) {
  Json out = Json::array();
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (m.multiplicity[e] == 0) continue;
    out.push_back({{"u", inst.id(inst.edge(e).u)},
                   {"v", inst.id(inst.edge(e).v)},
                   {"mult", m.multiplicity[e]}});
  }
  return out;
}

Json LotteryJson(const Instance& inst, const Lottery& lottery) {
  Json out = Json::array();
  for (const auto& entry : lottery.entries) {
    out.push_back({{"prob", ToString(entry.probability)},
                   {"matching", MatchingJson(inst, entry.matching)}});
  }
  return out;
}

Json MarginalsJson(const Instance& inst, const UtilityProfile& profile) {
  Json out = Json::object();
  auto marginals = ProbabilisticMarginals(profile);
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    Json dist = Json::array();
    for (const auto& o : marginals[i]) {
      dist.push_back({{"units", o.units.get_str()}, {"prob", ToString(o.probability)}});
    }
    out[inst.id(i)] = dist;
  }
  return out;
}

Json ExchangeJson(const Instance& inst, const std::vector<Rational>& exchange) {
  Json out = Json::array();
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    out.push_back({{"u", inst.id(inst.edge(e).u)},
                   {"v", inst.id(inst.edge(e).v)},
                   {"amount", ToString(exchange[e])}});
  }
  return out;
}

Json FlowJson(const BipartiteConstruction& construction, const Flow& flow) {
  const auto& net = construction.net;
  Json arcs = Json::array();
  for (ArcIndex a = 0; a < net.num_arcs(); ++a) {
    const auto& arc = net.arc(a);
    arcs.push_back({{"from", net.name(arc.from)},
                    {"to", net.name(arc.to)},
                    {"rule", RuleName(construction.provenance[a].rule)},
                    {"cap", arc.cap.unbounded() ? Json(nullptr) : Json(ToString(arc.cap.value()))},
                    {"flow", ToString(flow.arc_flow[a])}});
  }
  return Json{{"value", ToString(flow.value)}, {"arcs", arcs}};
}

Json BreakpointsJson(const Instance& inst, const BipartiteConstruction& construction,
                     const std::vector<Breakpoint>& breakpoints) {
  Json out = Json::array();
  for (const auto& bp : breakpoints) {
    Json agents = Json::array();
    for (auto a : bp.agents) agents.push_back(inst.id(construction.agents[a].node));
    Json demanders = Json::array();
    for (auto b : bp.demanders) demanders.push_back(construction.net.name(construction.b_side[b].b_node));
    out.push_back({{"lambda", ToString(bp.lambda)},
                   {"type", bp.kind == BreakpointKind::kPeakReached ? 1 : 2},
                   {"agents", agents},
                   {"demanders", demanders}});
  }
  return out;
}

Json ManipulationJson(const Instance& inst, const ManipulationReport& report) {
  Json deltas = Json::object();
  for (std::size_t k = 0; k < report.coalition.size(); ++k) {
    deltas[inst.id(report.coalition[k])] = ToString(report.deltas[k]);
  }
  return Json{{"coalition", Ids(inst, report.coalition)},
              {"truthful", ProfileJson(inst, report.truthful)},
              {"manipulated", ProfileJson(inst, report.deviated)},
              {"deltas", deltas},
              {"verdict", VerdictName(report.verdict)},
              {"all_strictly_gain", report.all_strictly_gain},
              {"profitable_some_preference", report.profitable_some_preference}};
}

}  // namespace fairmatch
