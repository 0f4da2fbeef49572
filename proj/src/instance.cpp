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

#include "fairmatch/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace fairmatch {

using nlohmann::json;

Instance Instance::Create(std::string name, std::vector<NodeSpec> nodes,
                          std::vector<EdgeSpec> edges) {
  Instance inst;
  inst.name_ = std::move(name);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.id.empty()) {
      throw InstanceError("nodes[" + std::to_string(i) + "].id: must be a nonempty string");
    }
    if (n.peak < 1) {
      throw InstanceError("nodes[" + std::to_string(i) + "].peak: nonpositive peak " +
                          std::to_string(n.peak) + " for node '" + n.id + "'");
    }
    if (!inst.by_id_.emplace(n.id, inst.ids_.size()).second) {
      throw InstanceError("nodes[" + std::to_string(i) + "].id: duplicate id '" + n.id + "'");
    }
    inst.ids_.push_back(n.id);
    inst.peaks_.push_back(n.peak);
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    const std::string where = "edges[" + std::to_string(k) + "]";
    auto u = inst.Find(e.u);
    auto v = inst.Find(e.v);
    if (!u) throw InstanceError(where + ".u: unknown node '" + e.u + "'");
    if (!v) throw InstanceError(where + ".v: unknown node '" + e.v + "'");
    if (*u == *v) throw InstanceError(where + ": self-loop on '" + e.u + "'");
    if (e.cap && *e.cap < 1) {
      throw InstanceError(where + ".cap: capacity must be a positive integer or null");
    }
    NodeIndex a = *u, b = *v;
    if (inst.ids_[b] < inst.ids_[a]) std::swap(a, b);
    if (!inst.by_endpoints_.emplace(std::make_pair(a, b), inst.edges_.size()).second) {
      throw InstanceError(where + ": duplicate edge '" + e.u + "'-'" + e.v + "'");
    }
    inst.edges_.push_back(Edge{a, b, e.cap});
  }
  inst.Index();
  return inst;
}

void Instance::Index() {
  by_endpoints_.clear();
  incident_.assign(ids_.size(), {});
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    by_endpoints_.emplace(std::make_pair(std::min(edge.u, edge.v), std::max(edge.u, edge.v)), e);
    incident_[edge.u].emplace_back(edge.v, e);
    incident_[edge.v].emplace_back(edge.u, e);
  }
}

std::optional<NodeIndex> Instance::Find(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Instance::IndexOf(std::string_view id) const {
  auto i = Find(id);
  if (!i) throw InstanceError("unknown node '" + std::string(id) + "'");
  return *i;
}

std::optional<EdgeIndex> Instance::FindEdge(NodeIndex a, NodeIndex b) const {
  auto it = by_endpoints_.find({std::min(a, b), std::max(a, b)});
  if (it == by_endpoints_.end()) return std::nullopt;
  return it->second;
}

bool Instance::IsUncapacitated() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return !e.cap; });
}

std::int64_t Instance::TotalPeak() const {
  return std::accumulate(peaks_.begin(), peaks_.end(), std::int64_t{0});
}

Instance Instance::WithPeaks(std::vector<std::int64_t> peaks) const {
  if (peaks.size() != ids_.size()) throw InstanceError("peak vector size mismatch");
  for (auto p : peaks) {
    if (p < 0) throw InstanceError("negative peak");
  }
  Instance out = *this;
  out.peaks_ = std::move(peaks);
  return out;
}

Instance Instance::Induced(const std::vector<NodeIndex>& keep) const {
  Instance out;
  out.name_ = name_;
  std::vector<std::optional<NodeIndex>> remap(ids_.size());
  for (NodeIndex i : keep) {
    remap[i] = out.ids_.size();
    out.by_id_.emplace(ids_[i], out.ids_.size());
    out.ids_.push_back(ids_[i]);
    out.peaks_.push_back(peaks_[i]);
  }
  for (const auto& e : edges_) {
    if (remap[e.u] && remap[e.v]) out.edges_.push_back(Edge{*remap[e.u], *remap[e.v], e.cap});
  }
  out.Index();
  return out;
}

Instance Instance::WithoutEdges(const std::vector<EdgeIndex>& drop) const {
  Instance out = *this;
  std::vector<bool> dropped(edges_.size(), false);
  for (EdgeIndex e : drop) dropped.at(e) = true;
  out.edges_.clear();
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    if (!dropped[e]) out.edges_.push_back(edges_[e]);
  }
  out.Index();
  return out;
}

namespace {

std::int64_t RequireInt(const json& value, const std::string& field) {
  if (!value.is_number_integer()) throw InstanceError(field + ": expected an integer");
  return value.get<std::int64_t>();
}

std::string RequireString(const json& value, const std::string& field) {
  if (!value.is_string()) throw InstanceError(field + ": expected a string");
  return value.get<std::string>();
}

}  // namespace

Instance ParseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceError("top level: expected a JSON object");

  std::string name;
  if (doc.contains("name")) name = RequireString(doc["name"], "name");

  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw InstanceError("nodes: expected an array");
  }
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const auto& n = doc["nodes"][i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!n.is_object()) throw InstanceError(where + ": expected an object");
    if (!n.contains("id")) throw InstanceError(where + ".id: missing");
    if (!n.contains("peak")) throw InstanceError(where + ".peak: missing");
    nodes.push_back({RequireString(n["id"], where + ".id"), RequireInt(n["peak"], where + ".peak")});
  }

  std::vector<EdgeSpec> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw InstanceError("edges: expected an array");
    for (std::size_t k = 0; k < doc["edges"].size(); ++k) {
      const auto& e = doc["edges"][k];
      const std::string where = "edges[" + std::to_string(k) + "]";
      if (!e.is_object()) throw InstanceError(where + ": expected an object");
      if (!e.contains("u")) throw InstanceError(where + ".u: missing");
      if (!e.contains("v")) throw InstanceError(where + ".v: missing");
      EdgeSpec spec{RequireString(e["u"], where + ".u"), RequireString(e["v"], where + ".v"),
                    std::nullopt};
      if (e.contains("cap") && !e["cap"].is_null()) spec.cap = RequireInt(e["cap"], where + ".cap");
      edges.push_back(std::move(spec));
    }
  }
  return Instance::Create(std::move(name), std::move(nodes), std::move(edges));
}

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

std::string SerializeInstance(const Instance& inst) {
  json doc;
  doc["name"] = inst.name();
  doc["nodes"] = json::array();
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    doc["nodes"].push_back({{"id", inst.id(i)}, {"peak", inst.peak(i)}});
  }
  doc["edges"] = json::array();
  for (const auto& e : inst.edges()) {
    json cap = e.cap ? json(*e.cap) : json(nullptr);
    doc["edges"].push_back({{"u", inst.id(e.u)}, {"v", inst.id(e.v)}, {"cap", cap}});
  }
  return doc.dump();
}

std::vector<std::int64_t> BMatching::Utilities(const Instance& inst) const {
  std::vector<std::int64_t> x(inst.num_nodes(), 0);
  for (EdgeIndex e = 0; e < multiplicity.size(); ++e) {
    x[inst.edge(e).u] += multiplicity[e];
    x[inst.edge(e).v] += multiplicity[e];
  }
  return x;
}

std::int64_t BMatching::TotalUtility() const {
  return 2 * std::accumulate(multiplicity.begin(), multiplicity.end(), std::int64_t{0});
}

bool BMatching::IsFeasible(const Instance& inst) const {
  if (multiplicity.size() != inst.num_edges()) return false;
  for (EdgeIndex e = 0; e < multiplicity.size(); ++e) {
    if (multiplicity[e] < 0) return false;
    if (inst.edge(e).cap && multiplicity[e] > *inst.edge(e).cap) return false;
  }
  auto x = Utilities(inst);
  for (NodeIndex i = 0; i < x.size(); ++i) {
    if (x[i] > inst.peak(i)) return false;
  }
  return true;
}

UtilityProfile UtilityProfile::FromIntegers(const std::vector<std::int64_t>& xs) {
  UtilityProfile p;
  p.values.reserve(xs.size());
  for (auto x : xs) p.values.push_back(MakeRational(x));
  return p;
}

Rational UtilityProfile::Total() const {
  Rational sum = 0;
  for (const auto& v : values) sum += v;
  return sum;
}

bool UtilityProfile::WithinPeaks(const Instance& inst) const {
  if (values.size() != inst.num_nodes()) return false;
  for (NodeIndex i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > inst.peak(i)) return false;
  }
  return true;
}

ExpandedInstance ExpandNodes(const Instance& inst) {
  if (!inst.IsUncapacitated()) {
    throw UnsupportedError("node expansion is defined for uncapacitated instances only");
  }
  ExpandedInstance out{inst, {}, {}, {}, {}, {}};
  out.copies.resize(inst.num_nodes());
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    for (std::int64_t k = 1; k <= inst.peak(i); ++k) {
      out.copies[i].push_back(out.owner.size());
      out.copy_ids.push_back(inst.id(i) + "#" + std::to_string(k));
      out.owner.push_back(i);
    }
  }
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    for (auto a : out.copies[inst.edge(e).u]) {
      for (auto b : out.copies[inst.edge(e).v]) {
        out.edges.emplace_back(a, b);
        out.edge_origin.push_back(e);
      }
    }
  }
  return out;
}

BMatching ContractMatching(const ExpandedInstance& expanded, const UnitMatching& matching) {
  BMatching m = BMatching::Empty(expanded.base);
  for (const auto& [a, b] : matching) {
    auto e = expanded.base.FindEdge(expanded.owner.at(a), expanded.owner.at(b));
    if (!e) throw std::logic_error("matched copies " + expanded.copy_ids[a] + ", " +
                                   expanded.copy_ids[b] + " are not adjacent");
    ++m.multiplicity[*e];
  }
  return m;
}

}  // namespace fairmatch
