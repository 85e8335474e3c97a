// Copyright 2026 The Rulesel Authors
//
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


#include "rulesel/cli.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rulesel/covering.h"
#include "rulesel/eval.h"
#include "rulesel/exact.h"
#include "rulesel/generators.h"
#include "rulesel/parser.h"

namespace rulesel {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitCapacity = 3;

// bound_value travels as a tagged string so the number can be rendered with
// exactly 4 decimals.
constexpr std::string_view kBoundTag = "@@bound:";

struct Options {
  std::string rules_path;
  std::string premise_path;
  std::string truth_path;
  std::string limits;
  size_t max_rules = ExactConfig().max_rules;
  std::optional<uint64_t> seed;
  bool pretty = false;

  std::string objective = "fpfn";
  std::string method = "exact";
  std::optional<std::string> select;
  std::string point;
  std::string gen_kind;
  std::string setcover_path;
  std::string out_prefix;
  GenSeed knobs;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw UsageError("cannot write " + path);
}

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) {
    size_t b = part.find_first_not_of(" \t");
    size_t e = part.find_last_not_of(" \t");
    if (b != std::string::npos) parts.push_back(part.substr(b, e - b + 1));
  }
  return parts;
}

std::pair<int64_t, int64_t> ParsePair(const std::string& text,
                                      const std::string& flag) {
  std::vector<std::string> parts = SplitCommas(text);
  try {
    size_t used0 = 0, used1 = 0;
    if (parts.size() == 2) {
      int64_t a = std::stoll(parts[0], &used0);
      int64_t b = std::stoll(parts[1], &used1);
      if (used0 == parts[0].size() && used1 == parts[1].size()) return {a, b};
    }
  } catch (const std::exception&) {
  }
  throw UsageError(flag + " expects two integers separated by a comma");
}

Objective ParseObjective(const std::string& name) {
  if (name == "fp") return Objective::kFp;
  return Objective::kFpFn;
}

Json NewReport(const std::string& command) {
  Json r;
  r["command"] = command;
  for (const char* key :
       {"objective", "method", "selected_rules", "fp_count", "fn_count", "error",
        "size", "bound_value", "optimal", "pareto_points", "details", "seed",
        "runtime_ms"}) {
    r[key] = nullptr;
  }
  return r;
}

Json FactList(const FactSet& facts) {
  Json list = Json::array();
  for (const Fact& f : facts) list.push_back(f.ToString());
  return list;
}

Json RuleList(const Selection& selection) {
  Json list = Json::array();
  for (const std::string& name : selection.chosen) list.push_back(name);
  return list;
}

// Reports list front points by ascending size, the reverse of the library
// order.
Json PointList(const std::vector<ParetoPoint>& points) {
  Json list = Json::array();
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    list.push_back({it->error, it->size});
  }
  return list;
}

// Fills the selection-dependent fields from a fresh error computation.
void FillSelection(Json& report, const RuleSet& rules,
                   const DataExample& example, const Selection& selection,
                   const EvalCache* cache) {
  ErrorReport errors = ComputeErrors(rules, selection, example, cache);
  std::vector<size_t> indices = ResolveSelection(rules, selection);
  int64_t size = 0;
  for (size_t i : indices) size += RuleSize(rules.rules[i]);
  report["selected_rules"] = RuleList(selection);
  report["fp_count"] = errors.fp_count;
  report["fn_count"] = errors.fn_count;
  report["error"] = errors.total;
  report["size"] = size;
}

struct Inputs {
  RuleSet rules;
  DataExample example;
  EvalLimits limits;
};

Inputs LoadInputs(const Options& opt) {
  for (const auto& [flag, value] :
       {std::pair{"--rules", &opt.rules_path}, std::pair{"--premise", &opt.premise_path},
        std::pair{"--truth", &opt.truth_path}}) {
    if (value->empty()) throw UsageError(std::string(flag) + " is required");
  }
  Inputs in;
  if (!opt.limits.empty()) {
    auto [a, r] = ParsePair(opt.limits, "--limits");
    in.limits = EvalLimits::Make(static_cast<int>(a), static_cast<int>(r));
  }
  in.rules = ParseRules(ReadFile(opt.rules_path), opt.rules_path);
  in.example.premise = ParseFacts(ReadFile(opt.premise_path), {}, opt.premise_path);
  in.example.truth = ParseFacts(ReadFile(opt.truth_path),
                                in.rules.conclusion_schema, opt.truth_path);
  return in;
}

ExactConfig MakeExactConfig(const Options& opt, const Inputs& in) {
  ExactConfig config;
  config.max_rules = opt.max_rules;
  config.objective = ParseObjective(opt.objective);
  config.limits = in.limits;
  return config;
}

Json RunEval(const Options& opt) {
  Inputs in = LoadInputs(opt);
  Selection selection = Selection::All(in.rules);
  if (opt.select) {
    selection.chosen.clear();
    for (const std::string& name : SplitCommas(*opt.select)) {
      selection.chosen.insert(name);
    }
  }
  EvalCache cache = EvalCache::Build(in.rules, in.example.premise, in.limits);
  Json report = NewReport("eval");
  FillSelection(report, in.rules, in.example, selection, &cache);
  ErrorReport errors = ComputeErrors(in.rules, selection, in.example, &cache);
  report["details"] = {{"false_positives", FactList(errors.fp)},
                       {"false_negatives", FactList(errors.fn)}};
  return report;
}

Json RunSelect(const Options& opt) {
  Inputs in = LoadInputs(opt);
  Objective objective = ParseObjective(opt.objective);
  Json report = NewReport("select");
  report["objective"] = ObjectiveName(objective);
  report["method"] = opt.method;
  if (opt.method == "exact") {
    ExactResult result = SolveExact(in.rules, in.example, MakeExactConfig(opt, in));
    FillSelection(report, in.rules, in.example, result.witness, nullptr);
    report["optimal"] = true;
    return report;
  }

  EvalCache cache = EvalCache::Build(in.rules, in.example.premise, in.limits);
  CoverSelection cover;
  BackMap back_map;
  double bound;
  size_t truth_size = in.example.truth.size();
  if (objective == Objective::kFp) {
    RbscInstance instance = BuildRbsc(in.rules, in.example, cache);
    cover = SolveRbscGreedy(instance);
    back_map = instance.back_map;
    bound = FpApproxFactor(in.rules.size(), truth_size);
  } else {
    PnpscInstance instance = BuildPnpsc(in.rules, in.example, cache);
    cover = SolvePnpscApprox(instance);
    back_map = instance.back_map;
    bound = FpFnApproxFactor(in.rules.size(), truth_size);
  }
  FillSelection(report, in.rules, in.example, MapBack(cover, back_map), &cache);
  char text[64];
  std::snprintf(text, sizeof(text), "%.4f", bound);
  report["bound_value"] = std::string(kBoundTag) + text;
  report["details"] = {{"cover_cost", cover.cost}};
  return report;
}

Json RunPareto(const Options& opt) {
  Inputs in = LoadInputs(opt);
  ExactConfig config = MakeExactConfig(opt, in);
  FrontResult front = ParetoFront(in.rules, in.example, config);
  Json report = NewReport("pareto");
  report["objective"] = ObjectiveName(config.objective);
  report["method"] = "exact";
  report["pareto_points"] = PointList(front.points);
  Json witnesses = Json::array();
  for (auto it = front.points.rbegin(); it != front.points.rend(); ++it) {
    witnesses.push_back(RuleList(*it->witness));
  }
  report["details"] = {{"witnesses", witnesses}, {"digest", front.digest}};
  return report;
}

Json RunBilevel(const Options& opt) {
  Inputs in = LoadInputs(opt);
  ExactConfig config = MakeExactConfig(opt, in);
  BilevelResult result = BilevelOptimum(in.rules, in.example, config);
  Json report = NewReport("bilevel");
  report["objective"] = ObjectiveName(config.objective);
  report["method"] = "exact";
  FillSelection(report, in.rules, in.example, result.witness, nullptr);
  report["optimal"] = true;
  return report;
}

Json RunMember(const Options& opt) {
  auto [error, size] = ParsePair(opt.point, "--point");
  Inputs in = LoadInputs(opt);
  ExactConfig config = MakeExactConfig(opt, in);
  FrontResult front = ParetoFront(in.rules, in.example, config);
  bool member = false;
  for (const ParetoPoint& p : front.points) {
    member = member || (p.error == error && p.size == size);
  }
  Json report = NewReport("member");
  report["objective"] = ObjectiveName(config.objective);
  report["method"] = "exact";
  report["optimal"] = member;
  report["pareto_points"] = PointList(front.points);
  report["details"] = {{"point", {error, size}}, {"member", member}};
  return report;
}

Json RunCheckFeasible(const Options& opt) {
  Inputs in = LoadInputs(opt);
  EvalCache cache = EvalCache::Build(in.rules, in.example.premise, in.limits);
  Feasibility feasibility = CheckFpFeasible(in.rules, in.example, &cache);
  Json report = NewReport("check-feasible");
  report["objective"] = "fp";
  report["details"] = {{"feasible", feasibility.ok},
                       {"missing", FactList(feasibility.missing)}};
  return report;
}

Json RunGen(const Options& opt) {
  SetCoverInstance cover;
  std::string source;
  bool random_source = opt.setcover_path.empty();
  if (opt.gen_kind != "random") {
    if (random_source) {
      cover = GenerateRandomSetCover(opt.knobs);
    } else {
      cover = ParseSetCover(ReadFile(opt.setcover_path));
    }
  }
  source = random_source ? opt.knobs.Describe() : "setcover=" + opt.setcover_path;
  std::string manifest = "# gen " + opt.gen_kind + " " + source + "\n";

  GeneratedInstance gen;
  if (opt.gen_kind == "thm1") {
    gen = GenerateSetCoverEncoding(cover);
  } else if (opt.gen_kind == "thm3") {
    gen = GenerateFixedSchemaEncoding(cover);
  } else if (opt.gen_kind == "clones") {
    gen = GenerateClonedSetCoverEncoding(cover);
  } else {
    gen = GenerateRandomRuleSelection(opt.knobs);
  }

  std::vector<std::pair<std::string, std::string>> texts = {
      {"rules", manifest + WriteRules(gen.rules)},
      {"premise", manifest + WriteFacts(gen.example.premise)},
      {"truth", manifest + WriteFacts(gen.example.truth)}};
  if (opt.gen_kind != "random") {
    texts.emplace_back("setcover", manifest + WriteSetCover(cover));
  }

  Json details;
  details["kind"] = opt.gen_kind;
  details["num_rules"] = gen.rules.size();
  details["premise_facts"] = gen.example.premise.size();
  details["truth_facts"] = gen.example.truth.size();
  if (opt.out_prefix.empty()) {
    for (const auto& [name, text] : texts) details[name] = text;
  } else {
    Json files = Json::array();
    for (const auto& [name, text] : texts) {
      std::string path = opt.out_prefix + "." + name;
      WriteFile(path, text);
      files.push_back(path);
    }
    details["files"] = files;
  }

  Json report = NewReport("gen");
  report["method"] = opt.gen_kind;
  report["details"] = details;
  if (random_source) report["seed"] = opt.knobs.seed;
  return report;
}

std::string BoundText(const Json& value) {
  return value.get<std::string>().substr(kBoundTag.size());
}

std::string RenderJson(const Json& report) {
  std::string text = report.dump();
  const Json& bound = report["bound_value"];
  if (bound.is_string()) {
    std::string quoted = Json(bound).dump();
    text.replace(text.find(quoted), quoted.size(), BoundText(bound));
  }
  return text;
}

std::string Cell(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

void PrintTable(const Json& report, std::ostream& out) {
  for (const auto& [key, value] : report.items()) {
    if (key == "details" || key == "pareto_points" || value.is_null()) continue;
    std::string cell = key == "bound_value" ? BoundText(value) : Cell(value);
    char line[64];
    std::snprintf(line, sizeof(line), "%-16s", key.c_str());
    out << line << cell << "\n";
  }
  if (report["pareto_points"].is_array()) {
    out << "\nerror  size\n";
    for (const Json& p : report["pareto_points"]) {
      char line[64];
      std::snprintf(line, sizeof(line), "%5lld  %4lld\n",
                    static_cast<long long>(p[0].get<int64_t>()),
                    static_cast<long long>(p[1].get<int64_t>()));
      out << line;
    }
  }
  if (report["details"].is_object()) {
    out << "\n";
    for (const auto& [key, value] : report["details"].items()) {
      if (value.is_string() && value.get<std::string>().find('\n') != std::string::npos) {
        out << "[" << key << "]\n" << value.get<std::string>();
      } else {
        char line[64];
        std::snprintf(line, sizeof(line), "%-16s", key.c_str());
        out << line << Cell(value) << "\n";
      }
    }
  }
}

void EmitError(std::ostream& err, const std::string& code,
               const std::string& message, Json extra = Json::object()) {
  Json body;
  body["code"] = code;
  body["message"] = message;
  for (auto& [key, value] : extra.items()) body[key] = value;
  Json wrapper;
  wrapper["error"] = body;
  err << wrapper.dump() << "\n";
}

int ReportError(const Error& e, std::ostream& err) {
  Json extra = Json::object();
  if (auto* parse = dynamic_cast<const ParseError*>(&e)) {
    extra["file"] = parse->file();
    extra["line"] = parse->line();
    extra["column"] = parse->column();
    extra["snippet"] = parse->snippet();
  } else if (auto* validation = dynamic_cast<const ValidationError*>(&e)) {
    Json list = Json::array();
    for (const Violation& v : validation->violations()) {
      list.push_back({{"rule", v.rule}, {"reason", v.reason}});
    }
    extra["violations"] = list;
  } else if (auto* infeasible = dynamic_cast<const InfeasibleError*>(&e)) {
    extra["missing"] = FactList(infeasible->missing());
  } else if (auto* uncoverable = dynamic_cast<const UncoverableError*>(&e)) {
    extra["element"] = uncoverable->element();
  }
  EmitError(err, ErrorCodeName(e.code()), e.what(), extra);
  switch (e.code()) {
    case ErrorCode::kInfeasible:
      return kExitInfeasible;
    case ErrorCode::kCapacity:
      return kExitCapacity;
    default:
      return kExitUsage;
  }
}

void AddInputFlags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--rules", opt.rules_path, "Rule file");
  cmd->add_option("--premise", opt.premise_path, "Premise fact file");
  cmd->add_option("--truth", opt.truth_path, "Ground-truth fact file");
}

void AddObjectiveFlag(CLI::App* cmd, Options& opt) {
  cmd->add_option("--objective", opt.objective, "fp or fpfn")
      ->check(CLI::IsMember({"fp", "fpfn"}));
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options opt;
  CLI::App app{"Rule selection over Horn rules", "rulesel"};
  app.require_subcommand(1);
  app.fallthrough();
  AddInputFlags(&app, opt);
  app.add_option("--limits", opt.limits, "Max premise atoms and conclusion arity, as a,r");
  app.add_option("--max-rules", opt.max_rules, "Rule cap for exact solving");
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_flag("--pretty", opt.pretty, "Print a table instead of JSON");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a selection (default: all rules)");
  eval->add_option("--select", opt.select, "Comma-separated rule names");

  CLI::App* select = app.add_subcommand("select", "Choose a rule subset");
  AddObjectiveFlag(select, opt);
  select->add_option("--method", opt.method, "greedy or exact")
      ->check(CLI::IsMember({"greedy", "exact"}));

  CLI::App* pareto = app.add_subcommand("pareto", "Error/size Pareto front");
  AddObjectiveFlag(pareto, opt);
  CLI::App* bilevel = app.add_subcommand("bilevel", "Minimum error, then minimum size");
  AddObjectiveFlag(bilevel, opt);
  CLI::App* member = app.add_subcommand("member", "Test a point for Pareto membership");
  AddObjectiveFlag(member, opt);
  member->add_option("--point", opt.point, "Point as error,size")->required();

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("kind", opt.gen_kind, "thm1, thm3, clones or random")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm3", "clones", "random"}));
  gen->add_option("--setcover", opt.setcover_path, "Set cover file to encode");
  gen->add_option("--out", opt.out_prefix, "Write PREFIX.rules, PREFIX.premise, ...");
  gen->add_option("--universe", opt.knobs.universe_size, "Random universe size");
  gen->add_option("--sets", opt.knobs.num_sets, "Random number of sets");
  gen->add_option("--density", opt.knobs.density, "Membership probability");
  gen->add_option("--num-rules", opt.knobs.num_rules, "Random rule count");
  gen->add_option("--domain", opt.knobs.domain_size, "Random domain size");
  gen->add_option("--unary", opt.knobs.num_unary, "Unary premise relations");
  gen->add_option("--binary", opt.knobs.num_binary, "Binary premise relations");
  gen->add_option("--join-rate", opt.knobs.join_rule_rate, "Share of join rules");
  gen->add_option("--fp-noise", opt.knobs.fp_noise, "Drop rate for produced facts");
  gen->add_option("--fn-noise", opt.knobs.fn_noise, "Add rate for unproduced facts");

  CLI::App* check = app.add_subcommand("check-feasible",
                                       "Whether every truth fact is produced");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    EmitError(err, "usage_error", e.what());
    return kExitUsage;
  }
  if (opt.seed) opt.knobs.seed = *opt.seed;

  auto start = std::chrono::steady_clock::now();
  Json report;
  try {
    if (*eval) {
      report = RunEval(opt);
    } else if (*select) {
      report = RunSelect(opt);
    } else if (*pareto) {
      report = RunPareto(opt);
    } else if (*bilevel) {
      report = RunBilevel(opt);
    } else if (*member) {
      report = RunMember(opt);
    } else if (*gen) {
      report = RunGen(opt);
    } else if (*check) {
      report = RunCheckFeasible(opt);
    }
  } catch (const Error& e) {
    return ReportError(e, err);
  } catch (const UsageError& e) {
    EmitError(err, "usage_error", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    EmitError(err, ErrorCodeName(ErrorCode::kInternal), e.what());
    return kExitUsage;
  }
  if (opt.seed && report["seed"].is_null()) report["seed"] = *opt.seed;
  report["runtime_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  if (opt.pretty) {
    PrintTable(report, out);
  } else {
    out << RenderJson(report) << "\n";
  }
  return kExitOk;
}

}  // namespace rulesel
