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

#include "fairmatch/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "fairmatch/mechanism.hpp"

namespace fairmatch {

OracleSizeError::OracleSizeError(std::int64_t size, std::int64_t limit)
    : std::runtime_error("oracle refused: instance has " + std::to_string(size) +
                         " expanded nodes, limit is " + std::to_string(limit) +
                         " (set FAIRMATCH_ORACLE_LIMIT to raise it)"),
      size_(size),
      limit_(limit) {}

std::int64_t DefaultOracleLimit() {
  if (const char* env = std::getenv("FAIRMATCH_ORACLE_LIMIT")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 14;
}

void ForEachBMatching(const Instance& inst, const std::function<void(const BMatching&)>& visit,
                      std::int64_t limit) {
  if (inst.TotalPeak() > limit) throw OracleSizeError(inst.TotalPeak(), limit);
  std::vector<std::int64_t> residual = inst.peaks();
  BMatching m = BMatching::Empty(inst);
  const std::size_t num_edges = inst.num_edges();
  // Multiplicity per edge in index order; the residual peaks prune.
  std::function<void(EdgeIndex)> recurse = [&](EdgeIndex e) {
    if (e == num_edges) {
      visit(m);
      return;
    }
    const auto& edge = inst.edge(e);
    std::int64_t top = std::min(residual[edge.u], residual[edge.v]);
    if (edge.cap) top = std::min(top, *edge.cap);
    for (std::int64_t k = 0; k <= top; ++k) {
      m.multiplicity[e] = k;
      residual[edge.u] -= k;
      residual[edge.v] -= k;
      recurse(e + 1);
      residual[edge.u] += k;
      residual[edge.v] += k;
    }
    m.multiplicity[e] = 0;
  };
  recurse(0);
}

std::vector<BMatching> EnumerateBMatchings(const Instance& inst, std::int64_t limit) {
  std::vector<BMatching> all;
  ForEachBMatching(inst, [&](const BMatching& m) { all.push_back(m); }, limit);
  return all;
}

std::int64_t MaxTotalUtility(const Instance& inst, std::int64_t limit) {
  std::int64_t best = 0;
  ForEachBMatching(inst, [&](const BMatching& m) { best = std::max(best, m.TotalUtility()); },
                   limit);
  return best;
}

namespace {

std::map<std::vector<std::int64_t>, BMatching> DistinctProfiles(const Instance& inst,
                                                                std::int64_t limit) {
  std::map<std::vector<std::int64_t>, BMatching> seen;
  ForEachBMatching(inst, [&](const BMatching& m) { seen.try_emplace(m.Utilities(inst), m); },
                   limit);
  return seen;
}

bool Dominates(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

}  // namespace

std::vector<ParetoProfile> ParetoProfiles(const Instance& inst, std::int64_t limit) {
  auto seen = DistinctProfiles(inst, limit);
  std::vector<ParetoProfile> out;
  for (const auto& [u, m] : seen) {
    bool dominated = std::any_of(seen.begin(), seen.end(),
                                 [&](const auto& other) { return Dominates(other.first, u); });
    if (!dominated) out.push_back({u, m});
  }
  return out;
}

std::vector<std::vector<std::int64_t>> MaximumProfiles(const Instance& inst,
                                                       std::int64_t limit) {
  auto seen = DistinctProfiles(inst, limit);
  std::int64_t best = 0;
  for (const auto& [u, m] : seen) best = std::max(best, m.TotalUtility());
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& [u, m] : seen) {
    if (m.TotalUtility() == best) out.push_back(u);
  }
  return out;
}

namespace {

std::vector<Rational> SortedPrefix(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i) v[i] += v[i - 1];
  return v;
}

}  // namespace

bool LorenzDominates(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("Lorenz comparison of different sizes");
  auto px = SortedPrefix(x);
  auto py = SortedPrefix(y);
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (px[i] < py[i]) return false;
  }
  return true;
}

bool LorenzEqual(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  return LorenzDominates(x, y) && LorenzDominates(y, x);
}

std::vector<char> GedOracle(const Instance& inst, std::int64_t limit) {
  const std::int64_t best = MaxTotalUtility(inst, limit);
  std::vector<bool> under(inst.num_nodes(), false);
  ForEachBMatching(
      inst,
      [&](const BMatching& m) {
        if (m.TotalUtility() != best) return;
        auto u = m.Utilities(inst);
        for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
          if (u[i] < inst.peak(i)) under[i] = true;
        }
      },
      limit);
  std::vector<char> cls(inst.num_nodes(), 'P');
  for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
    if (under[i]) {
      cls[i] = 'U';
      continue;
    }
    for (const auto& [j, e] : inst.incident(i)) {
      if (under[j]) cls[i] = 'O';
    }
  }
  return cls;
}

Rational CanonicalUtility(const Rational& x, std::int64_t peak) {
  Rational d = x - Rational(peak);
  return d < 0 ? Rational(d) : Rational(-d);
}

bool PreferredUnderSomeSinglePeaked(const Rational& x_new, const Rational& x_old,
                                    std::int64_t peak) {
  const Rational p(peak);
  if (x_new == x_old || x_old == p) return false;
  if (x_new == p) return true;
  const bool new_below = x_new < p;
  const bool old_below = x_old < p;
  if (new_below != old_below) return true;  // only the shape across the peak decides
  return new_below ? x_new > x_old : x_new < x_old;
}

namespace {

Instance ApplyDeviation(const Instance& truth, const Deviation& d) {
  std::set<NodeIndex> coalition(d.coalition.begin(), d.coalition.end());
  for (NodeIndex i : coalition) {
    if (i >= truth.num_nodes()) throw InstanceError("coalition member out of range");
  }
  std::vector<std::int64_t> peaks = truth.peaks();
  for (const auto& [i, p] : d.peaks) {
    if (!coalition.count(i)) {
      throw InstanceError("invalid deviation: '" + truth.id(i) + "' is not in the coalition");
    }
    if (p < 1) throw InstanceError("invalid deviation: reported peak must be positive");
    peaks[i] = p;
  }
  for (EdgeIndex e : d.hidden) {
    if (e >= truth.num_edges()) throw InstanceError("hidden edge out of range");
    const auto& edge = truth.edge(e);
    if (!coalition.count(edge.u) && !coalition.count(edge.v)) {
      throw InstanceError("invalid deviation: edge '" + truth.id(edge.u) + "'-'" +
                          truth.id(edge.v) + "' has no endpoint in the coalition");
    }
  }
  return truth.WithPeaks(peaks).WithoutEdges(d.hidden);
}

UtilityProfile RunModel(const Instance& inst, Model model) {
  return model == Model::kIndivisible ? SolveIndivisible(inst, false).profile
                                      : EgalitarianDivisible(inst).profile;
}

}  // namespace

ManipulationReport ManipulationExperiment(const Instance& truth, const Deviation& deviation,
                                          Model model) {
  Instance reported = ApplyDeviation(truth, deviation);
  ManipulationReport r;
  r.coalition = deviation.coalition;
  r.truthful = RunModel(truth, model);
  r.deviated = RunModel(reported, model);

  bool any_loss = false, any_gain = false, all_gain = !r.coalition.empty();
  bool some_pref_ok = true, some_pref_gain = false;
  for (NodeIndex i : r.coalition) {
    const Rational& before = r.truthful.values[i];
    const Rational& after = r.deviated.values[i];
    Rational delta = CanonicalUtility(after, truth.peak(i)) - CanonicalUtility(before, truth.peak(i));
    if (delta < 0) any_loss = true;
    if (delta > 0) any_gain = true;
    if (delta <= 0) all_gain = false;
    r.deltas.push_back(delta);

    const bool better = PreferredUnderSomeSinglePeaked(after, before, truth.peak(i));
    if (better) some_pref_gain = true;
    if (!better && after != before) some_pref_ok = false;
  }
  r.all_strictly_gain = all_gain;
  r.profitable_some_preference = some_pref_ok && some_pref_gain;
  if (!any_gain) {
    r.verdict = ManipulationVerdict::kUnprofitable;
  } else {
    r.verdict = any_loss ? ManipulationVerdict::kMixed : ManipulationVerdict::kProfitable;
  }
  return r;
}

Instance RandomInstance(std::mt19937_64& rng, const RandomInstanceOptions& options) {
  std::uniform_int_distribution<std::size_t> size(options.min_nodes, options.max_nodes);
  std::uniform_int_distribution<std::int64_t> peak(1, options.max_peak);
  std::bernoulli_distribution coin(options.edge_probability);
  std::bernoulli_distribution half(0.5);
  while (true) {
    const std::size_t n = size(rng);
    std::vector<NodeSpec> nodes;
    std::vector<bool> side(n);
    for (std::size_t i = 0; i < n; ++i) {
      nodes.push_back({"v" + std::to_string(i + 1), peak(rng)});
      side[i] = half(rng);
    }
    std::vector<EdgeSpec> edges;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::size_t pieces = n;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (options.bipartite && side[i] == side[j]) continue;
        if (!coin(rng)) continue;
        edges.push_back({nodes[i].id, nodes[j].id, std::nullopt});
        if (find(i) != find(j)) {
          parent[find(i)] = find(j);
          --pieces;
        }
      }
    }
    if (options.connected && pieces > 1) continue;
    return Instance::Create("random", std::move(nodes), std::move(edges));
  }
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ConnectedGraphs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  auto slot_of = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::find(slots.begin(), slots.end(), std::make_pair(a, b)) - slots.begin();
  };
  std::vector<std::vector<std::size_t>> relabel(perms.size(), std::vector<std::size_t>(slots.size()));
  for (std::size_t p = 0; p < perms.size(); ++p) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      relabel[p][s] = slot_of(perms[p][slots[s].first], perms[p][slots[s].second]);
    }
  }

  std::set<std::uint64_t> canon;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::size_t pieces = n;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (!(mask >> s & 1u)) continue;
      auto a = find(slots[s].first), b = find(slots[s].second);
      if (a != b) {
        parent[a] = b;
        --pieces;
      }
    }
    if (pieces > 1) continue;
    std::uint64_t least = mask;
    for (const auto& r : relabel) {
      std::uint64_t image = 0;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (mask >> s & 1u) image |= std::uint64_t{1} << r[s];
      }
      least = std::min(least, image);
    }
    if (!canon.insert(least).second) continue;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (least >> s & 1u) edges.push_back(slots[s]);
    }
    out.push_back(std::move(edges));
  }
  return out;
}

std::optional<LinkManipulation> SearchLinkManipulation(std::mt19937_64& rng,
                                                       const RandomInstanceOptions& options,
                                                       std::size_t trials) {
  std::bernoulli_distribution half(0.5);
  for (std::size_t t = 0; t < trials; ++t) {
    Instance inst = RandomInstance(rng, options);
    if (inst.num_edges() == 0) continue;
    Deviation d;
    for (NodeIndex i = 0; i < inst.num_nodes(); ++i) {
      if (half(rng)) d.coalition.push_back(i);
    }
    if (d.coalition.empty()) {
      d.coalition.push_back(std::uniform_int_distribution<NodeIndex>(0, inst.num_nodes() - 1)(rng));
    }
    std::set<NodeIndex> members(d.coalition.begin(), d.coalition.end());
    std::vector<EdgeIndex> own;
    for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
      if (members.count(inst.edge(e).u) || members.count(inst.edge(e).v)) own.push_back(e);
    }
    if (own.empty()) continue;
    for (EdgeIndex e : own) {
      if (half(rng)) d.hidden.push_back(e);
    }
    if (d.hidden.empty()) {
      d.hidden.push_back(own[std::uniform_int_distribution<std::size_t>(0, own.size() - 1)(rng)]);
    }
    ManipulationReport report = ManipulationExperiment(inst, d);
    if (report.all_strictly_gain) return LinkManipulation{inst, d, report};
  }
  return std::nullopt;
}

}  // namespace fairmatch
