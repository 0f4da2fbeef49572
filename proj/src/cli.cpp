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

#include "fairmatch/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "fairmatch/json_io.hpp"
#include "fairmatch/verify.hpp"

namespace fairmatch {

namespace {

struct Options {
  std::string instance;
  std::string output;
  std::string model = "indivisible";
  bool pretty = false;
  bool dump_flow = false;
  std::size_t samples = 1;
  std::optional<std::uint64_t> seed;
  bool oracle = false;
  std::vector<std::string> coalition;
  std::vector<std::string> hide;
  std::vector<std::string> peaks;
};

std::string Pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string PrettyMatching(const Instance& inst, const BMatching& m) {
  std::string s;
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (m.multiplicity[e] == 0) continue;
    if (!s.empty()) s += ", ";
    s += inst.id(inst.edge(e).u) + "-" + inst.id(inst.edge(e).v);
    if (m.multiplicity[e] > 1) s += " x" + std::to_string(m.multiplicity[e]);
  }
  return s.empty() ? "(empty)" : s;
}

std::string ClassName(GedClass c) {
  switch (c) {
    case GedClass::kUnder: return "under";
    case GedClass::kOver: return "over";
    case GedClass::kPerfect: return "perfect";
  }
  return "?";
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out), inst_(LoadInstance(o.instance)) {}

  int Ged() {
    GedDecomposition ged = GedDecompose(inst_);
    if (!o_.pretty) return Emit(GedJson(inst_, ged));
    std::ostringstream s;
    s << Pad("node", 10) << Pad("peak", 6) << "class\n";
    for (NodeIndex i = 0; i < inst_.num_nodes(); ++i) {
      s << Pad(inst_.id(i), 10) << Pad(std::to_string(inst_.peak(i)), 6)
        << ClassName(ged.node_class[i]);
      if (auto k = ged.component_of[i]) s << " (C" << *k + 1 << ")";
      s << "\n";
    }
    return EmitText(s.str());
  }

  int Solve() {
    if (o_.model == "divisible") {
      DivisibleOutcome d = EgalitarianDivisible(inst_);
      if (o_.pretty) {
        std::ostringstream s;
        s << Pad("node", 10) << Pad("peak", 6) << "x\n";
        for (NodeIndex i = 0; i < inst_.num_nodes(); ++i) {
          s << Pad(inst_.id(i), 10) << Pad(std::to_string(inst_.peak(i)), 6)
            << ToString(d.profile.values[i]) << "\n";
        }
        s << "\n" << Pad("edge", 20) << "exchange\n";
        for (EdgeIndex e = 0; e < inst_.num_edges(); ++e) {
          s << Pad(inst_.id(inst_.edge(e).u) + "-" + inst_.id(inst_.edge(e).v), 20)
            << ToString(d.exchange[e]) << "\n";
        }
        return EmitText(s.str());
      }
      Json j{{"model", "divisible"},
             {"profile", ProfileJson(inst_, d.profile)},
             {"exchange", ExchangeJson(inst_, d.exchange)}};
      if (o_.dump_flow) j["flow"] = FlowJson(BuildDivisible(inst_), d.flow);
      return Emit(j);
    }
    IndivisibleOutcome r = SolveIndivisible(inst_, false);
    if (o_.pretty) {
      std::ostringstream s;
      s << Pad("node", 10) << Pad("peak", 6) << Pad("class", 9) << Pad("x", 8) << "marginal\n";
      auto marginals = ProbabilisticMarginals(r.profile);
      for (NodeIndex i = 0; i < inst_.num_nodes(); ++i) {
        std::string dist;
        for (const auto& m : marginals[i]) {
          if (!dist.empty()) dist += ", ";
          dist += m.units.get_str() + " w.p. " + ToString(m.probability);
        }
        s << Pad(inst_.id(i), 10) << Pad(std::to_string(inst_.peak(i)), 6)
          << Pad(ClassName(r.ged.node_class[i]), 9) << Pad(ToString(r.profile.values[i]), 8)
          << dist << "\n";
      }
      return EmitText(s.str());
    }
    Json j{{"model", "indivisible"},
           {"profile", ProfileJson(inst_, r.profile)},
           {"marginals", MarginalsJson(inst_, r.profile)},
           {"breakpoints", BreakpointsJson(inst_, r.construction, r.egalitarian.breakpoints)}};
    if (o_.dump_flow) j["flow"] = FlowJson(r.construction, r.egalitarian.flow);
    return Emit(j);
  }

  int ShowLottery() {
    IndivisibleOutcome r = SolveIndivisible(inst_);
    if (o_.pretty) {
      std::ostringstream s;
      for (const auto& e : r.lottery.entries) {
        s << Pad(ToString(e.probability), 10) << PrettyMatching(inst_, e.matching) << "\n";
      }
      return EmitText(s.str());
    }
    return Emit(Json{{"lottery", LotteryJson(inst_, r.lottery)},
                     {"expected", ProfileJson(inst_, r.lottery.expected)}});
  }

  int Sample() {
    IndivisibleOutcome r = SolveIndivisible(inst_);
    LotterySampler sampler(r.lottery, *o_.seed);
    Json samples = Json::array();
    std::ostringstream s;
    for (std::size_t k = 0; k < o_.samples; ++k) {
      const BMatching& m = sampler.Next();
      samples.push_back(MatchingJson(inst_, m));
      s << PrettyMatching(inst_, m) << "\n";
    }
    if (o_.pretty) return EmitText(s.str());
    return Emit(Json{{"seed", *o_.seed}, {"samples", samples}});
  }

  int Verify() {
    VerifyOptions options;
    options.oracle = o_.oracle;
    VerifyReport report = VerifyInstance(inst_, options);
    const int code = report.AllPassed() ? kExitOk : kExitVerifyFailed;
    if (o_.pretty) {
      std::ostringstream s;
      for (const auto& c : report.checks) {
        s << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) s << " (" << c.detail << ")";
        s << "\n";
      }
      EmitText(s.str());
      return code;
    }
    Json checks = Json::array();
    for (const auto& c : report.checks) {
      Json item{{"name", c.name}, {"passed", c.passed}};
      if (!c.detail.empty()) item["detail"] = c.detail;
      checks.push_back(item);
    }
    Emit(Json{{"passed", report.AllPassed()}, {"checks", checks}});
    return code;
  }

  int Manipulate() {
    Deviation d;
    for (const auto& id : o_.coalition) d.coalition.push_back(inst_.IndexOf(id));
    for (const auto& spec : o_.hide) {
      auto colon = spec.find(':');
      if (colon == std::string::npos) throw InstanceError("--hide expects u:v, got '" + spec + "'");
      NodeIndex u = inst_.IndexOf(spec.substr(0, colon));
      NodeIndex v = inst_.IndexOf(spec.substr(colon + 1));
      auto e = inst_.FindEdge(u, v);
      if (!e) throw InstanceError("--hide: no edge '" + spec + "'");
      d.hidden.push_back(*e);
    }
    for (const auto& spec : o_.peaks) {
      auto eq = spec.find('=');
      if (eq == std::string::npos) throw InstanceError("--peak expects id=n, got '" + spec + "'");
      std::int64_t p = 0;
      try {
        std::size_t used = 0;
        p = std::stoll(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1) throw std::invalid_argument(spec);
      } catch (const std::logic_error&) {
        throw InstanceError("--peak: '" + spec + "' is not id=integer");
      }
      d.peaks[inst_.IndexOf(spec.substr(0, eq))] = p;
    }
    // Coalition defaults to the agents named in the deviation.
    if (d.coalition.empty()) {
      for (const auto& [i, p] : d.peaks) d.coalition.push_back(i);
    }
    std::sort(d.coalition.begin(), d.coalition.end());
    d.coalition.erase(std::unique(d.coalition.begin(), d.coalition.end()), d.coalition.end());
    Model model = o_.model == "divisible" ? Model::kDivisible : Model::kIndivisible;
    ManipulationReport report = ManipulationExperiment(inst_, d, model);
    Json j = ManipulationJson(inst_, report);
    if (!o_.pretty) return Emit(j);
    std::ostringstream s;
    s << Pad("node", 10) << Pad("truthful", 10) << Pad("manipulated", 12) << "delta\n";
    for (std::size_t k = 0; k < report.coalition.size(); ++k) {
      NodeIndex i = report.coalition[k];
      s << Pad(inst_.id(i), 10) << Pad(ToString(report.truthful.values[i]), 10)
        << Pad(ToString(report.deviated.values[i]), 12) << ToString(report.deltas[k]) << "\n";
    }
    s << "verdict: " << j["verdict"].get<std::string>()
      << "; profitable under some single-peaked preference: "
      << (report.profitable_some_preference ? "yes" : "no") << "\n";
    return EmitText(s.str());
  }

 private:
  int Emit(const Json& j) { return EmitText(j.dump(2) + "\n"); }

  int EmitText(const std::string& text) {
    if (o_.output.empty() || o_.output == "-") {
      out_ << text;
    } else {
      std::ofstream f(o_.output);
      if (!f) throw InstanceError("cannot write '" + o_.output + "'");
      f << text;
    }
    return kExitOk;
  }

  const Options& o_;
  std::ostream& out_;
  Instance inst_;
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Egalitarian exchange on general networks", "fairmatch"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("instance", o.instance, "instance JSON file")->required();
    sub->add_option("-o,--output", o.output, "write to this file instead of stdout");
    sub->add_flag("--pretty", o.pretty, "human-readable table instead of JSON");
  };
  auto* ged = app.add_subcommand("ged", "Gallai-Edmonds decomposition");
  common(ged);
  auto* solve = app.add_subcommand("solve", "egalitarian profile");
  common(solve);
  solve->add_option("--model", o.model)->check(CLI::IsMember({"divisible", "indivisible"}));
  solve->add_flag("--dump-flow", o.dump_flow, "include the realizing flow");
  auto* lottery = app.add_subcommand("lottery", "lottery over maximum b-matchings");
  common(lottery);
  auto* sample = app.add_subcommand("sample", "draw matchings from the lottery");
  common(sample);
  sample->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed)->required();
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  common(verify);
  verify->add_flag("--oracle", o.oracle, "add brute-force comparisons (FAIRMATCH_ORACLE_LIMIT)");
  auto* manipulate = app.add_subcommand("manipulate", "misreport experiment");
  common(manipulate);
  manipulate->add_option("--coalition", o.coalition, "deviating agents")->delimiter(',');
  manipulate->add_option("--hide", o.hide, "hide link u:v (repeatable)");
  manipulate->add_option("--peak", o.peaks, "report peak id=n (repeatable)");
  manipulate->add_option("--model", o.model)->check(CLI::IsMember({"divisible", "indivisible"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Runner runner(o, out);
    if (*ged) return runner.Ged();
    if (*solve) return runner.Solve();
    if (*lottery) return runner.ShowLottery();
    if (*sample) return runner.Sample();
    if (*verify) return runner.Verify();
    if (*manipulate) return runner.Manipulate();
  } catch (const OracleSizeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    // A broken internal invariant: as serious as a failed verification.
    err << "internal error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitInvalid;
}

}  // namespace fairmatch
