// Copyright 2026 The eqshare Authors
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

#include "eqshare/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "eqshare/autsearch.h"
#include "eqshare/error.h"
#include "eqshare/layer.h"
#include "eqshare/mask.h"
#include "eqshare/problem.h"

namespace eqshare {
namespace {

constexpr int kReportSchemaVersion = 1;

struct Options {
  std::string spec_path;
  std::uint64_t seed = 0;
  int trials = 10;
  double tolerance = 1e-9;
  std::size_t cap = kDefaultOrderCap;
  std::size_t node_budget = SearchLimits{}.node_budget;
  std::string out_path;
  std::string dot_path;
  bool one_based = false;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes every file to a sibling temporary first and renames only after all
// writes succeeded.
void WriteAll(const std::vector<std::pair<std::string, std::string>>& files) {
  namespace fs = std::filesystem;
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& [tmp, dst] : staged) fs::remove(tmp, ec);
  };
  for (const auto& [path, contents] : files) {
    fs::path dst(path);
    fs::path tmp = dst;
    tmp += ".tmp" + std::to_string(::getpid());
    staged.emplace_back(tmp, dst);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.close();
    if (!out) {
      cleanup();
      throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    }
  }
  for (const auto& [tmp, dst] : staged) {
    std::error_code ec;
    fs::rename(tmp, dst, ec);
    if (ec) {
      cleanup();
      throw Error(ErrorCode::kInvalidArgument, "cannot write " + dst.string() + ": " + ec.message());
    }
  }
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

Json ProfileJson(const ActionProfile& p) {
  return {{"faithful", p.faithful},
          {"transitive", p.transitive},
          {"semi_regular", p.semi_regular},
          {"regular", p.regular},
          {"kernel_size", p.kernel_size},
          {"image_order", p.image_order}};
}

Json ActionJson(const GroupAction& a, int base) {
  const OrbitPartition orbits = Orbits(a);
  Json members = Json::array();
  for (std::vector<int> orbit : orbits.Members()) {
    for (int& v : orbit) v += base;
    members.push_back(orbit);
  }
  Json gens = Json::array();
  for (const Permutation& p : a.GeneratorImages()) gens.push_back(ToCycleString(p, base));
  return {{"size", a.target_size()},
          {"generator_images", std::move(gens)},
          {"orbit_count", orbits.orbit_count},
          {"orbits", std::move(members)},
          {"profile", ProfileJson(ClassifyAction(a))}};
}

Json JointElementJson(const JointElement& e, int base) {
  return {{"n", ToCycleString(e.n, base)}, {"m", ToCycleString(e.m, base)}};
}

// Shifts node indices inside provenance records for display.
Json ShiftProvenance(Json p, int base) {
  for (const char* key : {"n", "m"}) {
    if (p.contains(key)) p[key] = p[key].get<int>() + base;
  }
  return p;
}

SearchLimits Limits(const Options& o) {
  SearchLimits limits;
  limits.node_budget = o.node_budget;
  return limits;
}

const char* VerdictName(Uniqueness u) { return u == Uniqueness::kUnique ? "unique" : "supergroup"; }

int GroupInfo(const CompiledProblem& p, const Options& o, std::ostream& out) {
  const int base = o.one_based ? 1 : 0;
  Json gens = Json::array();
  for (ElementId id : p.group->generator_ids()) {
    gens.push_back(ToCycleString(p.group->element(id), base));
  }
  Json report;
  report["schema_version"] = kReportSchemaVersion;
  report["command"] = "group info";
  report["index_base"] = base;
  report["group"] = {{"degree", p.group->degree()},
                     {"order", p.group->order()},
                     {"generators", std::move(gens)}};
  report["n_action"] = ActionJson(p.base_joint.n_action(), base);
  report["m_action"] = ActionJson(p.base_joint.m_action(), base);
  report["joint_order"] = p.base_joint.order();
  const std::string text = Dump(report);
  if (!o.out_path.empty()) WriteAll({{o.out_path, text}});
  out << text;
  return kExitOk;
}

int Design(const CompiledProblem& p, const ProblemSpec& spec, const Options& o,
           std::ostream& out) {
  std::optional<CertificationBlock> cert;
  const auto nodes = static_cast<std::size_t>(p.structure.n_size() + p.structure.m_size());
  if (nodes <= o.node_budget) {
    const Certificate c = CertifyUnique(p.structure, p.joint, Limits(o));
    cert = CertificationBlock{c.aut_order, c.joint_order, VerdictName(c.verdict), o.seed,
                              std::string(kToolVersion)};
  }
  const MaskExport mask = MakeMaskExport(p.structure, spec.channels, cert);
  const Json file = MaskToJson(mask);
  std::vector<std::pair<std::string, std::string>> files;
  if (!o.out_path.empty()) files.emplace_back(o.out_path, Dump(file));
  if (!o.dot_path.empty()) files.emplace_back(o.dot_path, ToDot(p.structure, spec.mode));
  WriteAll(files);
  Json shown = file;
  if (o.one_based) {
    shown["index_base"] = 1;
    for (Json& c : shown["base_colors"]) c["provenance"] = ShiftProvenance(c["provenance"], 1);
  }
  out << Dump(shown);
  return kExitOk;
}

int CheckEquivarianceCommand(const CompiledProblem& p, const Options& o, std::ostream& out) {
  const ColorMatrix cm = MergeColors(p.structure);
  std::vector<double> theta;
  for (std::int64_t v : FirstPrimes(cm.base_color_count())) theta.push_back(static_cast<double>(v));
  const TiedLayer layer(cm, theta, Nonlinearity::Leaky());
  EquivarianceOptions opts;
  opts.trials = o.trials;
  opts.tolerance = o.tolerance;
  opts.seed = o.seed;
  const EquivarianceReport r = CheckEquivariance(layer, p.joint, opts);
  Json report;
  report["schema_version"] = kReportSchemaVersion;
  report["command"] = "check equivariance";
  report["tested_elements"] = r.tested_elements;
  report["trials"] = r.trials;
  report["seed"] = r.seed;
  report["tolerance"] = r.tolerance;
  report["max_residual"] = r.max_residual;
  report["exact_run"] = r.exact_run;
  report["exact_pass"] = r.exact_pass;
  report["pass"] = r.pass;
  const std::string text = Dump(report);
  if (!o.out_path.empty()) WriteAll({{o.out_path, text}});
  out << text;
  return r.pass ? kExitOk : kExitCheckFailed;
}

int CertifyCommand(const CompiledProblem& p, const Options& o, std::ostream& out) {
  const int base = o.one_based ? 1 : 0;
  const Certificate c = CertifyUnique(p.structure, p.joint, Limits(o));
  auto build = [&](int b) {
    Json report;
    report["schema_version"] = kReportSchemaVersion;
    report["command"] = "certify unique";
    report["index_base"] = b;
    report["verdict"] = VerdictName(c.verdict);
    report["aut_order"] = c.aut_order;
    report["joint_order"] = c.joint_order;
    report["witness"] = c.witness ? JointElementJson(*c.witness, b) : Json(nullptr);
    report["seed"] = o.seed;
    return report;
  };
  if (!o.out_path.empty()) WriteAll({{o.out_path, Dump(build(0))}});
  out << Dump(build(base));
  return c.verdict == Uniqueness::kUnique ? kExitOk : kExitCheckFailed;
}

int ExportDot(const CompiledProblem& p, const ProblemSpec& spec, const Options& o,
              std::ostream& out) {
  const std::string dot = ToDot(p.structure, spec.mode);
  const std::string& path = o.dot_path.empty() ? o.out_path : o.dot_path;
  if (path.empty()) {
    out << dot;
  } else {
    WriteAll({{path, dot}});
  }
  return kExitOk;
}

void AddCommon(CLI::App* app, Options& o) {
  app->add_option("--spec", o.spec_path, "problem spec JSON")->required();
  app->add_option("--seed", o.seed, "RNG seed");
  app->add_option("--trials", o.trials, "random inputs per element")->check(CLI::PositiveNumber);
  app->add_option("--tolerance", o.tolerance, "float residual tolerance")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--cap", o.cap, "group order cap")->check(CLI::PositiveNumber);
  app->add_option("--node-budget", o.node_budget, "automorphism search node budget");
  app->add_option("--out", o.out_path, "output file");
  app->add_option("--dot", o.dot_path, "DOT output file");
  app->add_flag("--one-based", o.one_based, "show indices starting at 1 (display only)");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parameter-sharing designs for equivariant layers", "eqshare"};
  app.require_subcommand(1, 1);
  Options o;

  CLI::App* group = app.add_subcommand("group", "group commands")->require_subcommand(1, 1);
  CLI::App* group_info = group->add_subcommand("info", "order, orbits and action profiles");
  CLI::App* design = app.add_subcommand("design", "emit the weight-tying mask");
  CLI::App* check = app.add_subcommand("check", "checks")->require_subcommand(1, 1);
  CLI::App* check_eq = check->add_subcommand("equivariance", "verify equivariance");
  CLI::App* certify = app.add_subcommand("certify", "certificates")->require_subcommand(1, 1);
  CLI::App* certify_unique = certify->add_subcommand("unique", "certify unique equivariance");
  CLI::App* exporter = app.add_subcommand("export", "exports")->require_subcommand(1, 1);
  CLI::App* export_dot = exporter->add_subcommand("dot", "Graphviz rendering");
  for (CLI::App* leaf : {group_info, design, check_eq, certify_unique, export_dot}) {
    AddCommon(leaf, o);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const ProblemSpec spec = ParseSpec(ReadFile(o.spec_path));
    const CompiledProblem problem = Compile(spec, o.cap);
    if (group_info->parsed()) return GroupInfo(problem, o, out);
    if (design->parsed()) return Design(problem, spec, o, out);
    if (check_eq->parsed()) return CheckEquivarianceCommand(problem, o, out);
    if (certify_unique->parsed()) return CertifyCommand(problem, o, out);
    return ExportDot(problem, spec, o, out);
  } catch (const Error& e) {
    err << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace eqshare
