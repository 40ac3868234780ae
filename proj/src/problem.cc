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

#include "eqshare/problem.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <initializer_list>
#include <sstream>

#include "eqshare/error.h"

namespace eqshare {
namespace {

Error Invalid(const std::string& path, const std::string& what) {
  return Error(ErrorCode::kSpecInvalid, path + ": " + what);
}

void RequireObject(const Json& j, const std::string& path) {
  if (!j.is_object()) throw Invalid(path, "expected an object");
}

void AllowKeys(const Json& j, const std::string& path,
               std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Invalid(path + "." + key, "unknown field");
    }
  }
}

const Json& Require(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Invalid(path + "." + key, "missing required field");
  return *it;
}

int GetInt(const Json& j, const std::string& path, int min_value) {
  if (!j.is_number_integer()) throw Invalid(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min_value || v > 1'000'000) {
    throw Invalid(path, "must be between " + std::to_string(min_value) + " and 1000000");
  }
  return static_cast<int>(v);
}

std::string GetString(const Json& j, const std::string& path) {
  if (!j.is_string()) throw Invalid(path, "expected a string");
  return j.get<std::string>();
}

bool GetBool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw Invalid(path, "expected a boolean");
  return j.get<bool>();
}

std::vector<Permutation> GetCycles(const Json& j, const std::string& path, int degree) {
  if (!j.is_array()) throw Invalid(path, "expected an array of cycle strings");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    try {
      out.push_back(ParseCycles(GetString(j[i], at), degree));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kSpecInvalid) throw;
      throw Invalid(at, e.what());
    }
  }
  return out;
}

NamedGroupSpec ParseNamed(const Json& j, const std::string& path, const std::string& kind) {
  NamedGroupSpec spec;
  if (kind == "cyclic" || kind == "dihedral" || kind == "symmetric") {
    AllowKeys(j, path, {"kind", "n"});
    spec.kind = kind == "cyclic"     ? GroupKind::kCyclic
                : kind == "dihedral" ? GroupKind::kDihedral
                                     : GroupKind::kSymmetric;
    spec.n = GetInt(Require(j, path, "n"), path + ".n", 1);
  } else if (kind == "wreath") {
    AllowKeys(j, path, {"kind", "d", "blocks"});
    spec.kind = GroupKind::kWreath;
    spec.d = GetInt(Require(j, path, "d"), path + ".d", 1);
    spec.blocks = GetInt(Require(j, path, "blocks"), path + ".blocks", 1);
  } else if (kind == "direct_product") {
    AllowKeys(j, path, {"kind", "factors"});
    spec.kind = GroupKind::kDirectProduct;
    const Json& factors = Require(j, path, "factors");
    if (!factors.is_array() || factors.empty()) {
      throw Invalid(path + ".factors", "expected a nonempty array");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::string at = path + ".factors[" + std::to_string(i) + "]";
      RequireObject(factors[i], at);
      const std::string sub = GetString(Require(factors[i], at, "kind"), at + ".kind");
      if (sub == "explicit") throw Invalid(at + ".kind", "factors must be named groups");
      spec.factors.push_back(ParseNamed(factors[i], at, sub));
    }
  } else {
    throw Invalid(path + ".kind", "unknown group kind \"" + kind + "\"");
  }
  return spec;
}

GroupSpec ParseGroup(const Json& j, const std::string& path) {
  RequireObject(j, path);
  const std::string kind = GetString(Require(j, path, "kind"), path + ".kind");
  GroupSpec spec;
  if (kind == "explicit") {
    AllowKeys(j, path, {"kind", "degree", "generators"});
    spec.degree = GetInt(Require(j, path, "degree"), path + ".degree", 0);
    spec.generators = GetCycles(Require(j, path, "generators"), path + ".generators", spec.degree);
  } else {
    spec.named = ParseNamed(j, path, kind);
  }
  return spec;
}

ActionSpec ParseAction(const Json& j, const std::string& path) {
  RequireObject(j, path);
  const std::string kind = GetString(Require(j, path, "kind"), path + ".kind");
  ActionSpec spec;
  if (kind == "images") {
    AllowKeys(j, path, {"kind", "size", "generators"});
    spec.kind = ActionKind::kImages;
    spec.size = GetInt(Require(j, path, "size"), path + ".size", 0);
    spec.generators = GetCycles(Require(j, path, "generators"), path + ".generators", spec.size);
  } else if (kind == "natural" || kind == "regular") {
    AllowKeys(j, path, {"kind"});
    spec.kind = kind == "natural" ? ActionKind::kNatural : ActionKind::kRegular;
  } else if (kind == "trivial") {
    AllowKeys(j, path, {"kind", "size"});
    spec.kind = ActionKind::kTrivial;
    spec.size = GetInt(Require(j, path, "size"), path + ".size", 0);
  } else {
    throw Invalid(path + ".kind", "unknown action kind \"" + kind + "\"");
  }
  return spec;
}

const char* GroupKindName(GroupKind k) {
  switch (k) {
    case GroupKind::kCyclic: return "cyclic";
    case GroupKind::kDihedral: return "dihedral";
    case GroupKind::kSymmetric: return "symmetric";
    case GroupKind::kWreath: return "wreath";
    case GroupKind::kDirectProduct: return "direct_product";
  }
  return "";
}

Json NamedToJson(const NamedGroupSpec& spec) {
  Json j;
  j["kind"] = GroupKindName(spec.kind);
  switch (spec.kind) {
    case GroupKind::kWreath:
      j["d"] = spec.d;
      j["blocks"] = spec.blocks;
      break;
    case GroupKind::kDirectProduct: {
      Json factors = Json::array();
      for (const auto& f : spec.factors) factors.push_back(NamedToJson(f));
      j["factors"] = std::move(factors);
      break;
    }
    default:
      j["n"] = spec.n;
  }
  return j;
}

Json CyclesToJson(const std::vector<Permutation>& perms) {
  Json out = Json::array();
  for (const Permutation& p : perms) out.push_back(ToCycleString(p));
  return out;
}

Json ActionToJson(const ActionSpec& spec) {
  Json j;
  switch (spec.kind) {
    case ActionKind::kImages:
      j["kind"] = "images";
      j["size"] = spec.size;
      j["generators"] = CyclesToJson(spec.generators);
      break;
    case ActionKind::kNatural: j["kind"] = "natural"; break;
    case ActionKind::kRegular: j["kind"] = "regular"; break;
    case ActionKind::kTrivial:
      j["kind"] = "trivial";
      j["size"] = spec.size;
      break;
  }
  return j;
}

// Runs `fn`, prefixing any library error with `path`.
template <typename Fn>
auto AtPath(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSpecInvalid || e.code() == ErrorCode::kSpecSyntax) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

GroupAction BuildSpecAction(const ActionSpec& spec, const GroupPtr& group) {
  switch (spec.kind) {
    case ActionKind::kImages: return BuildAction(group, spec.generators, spec.size);
    case ActionKind::kNatural: return NaturalAction(group);
    case ActionKind::kRegular: return RegularAction(group);
    case ActionKind::kTrivial: return TrivialAction(group, spec.size);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown action kind");
}

}  // namespace

ProblemSpec ParseSpec(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::kSpecSyntax,
                "syntax error at offset " + std::to_string(offset) + ": " + e.what());
  }
  const std::string root = "$";
  RequireObject(j, root);
  AllowKeys(j, root,
            {"schema_version", "group", "n_action", "m_action", "genset", "design",
             "tie_across_orbits", "channels", "mode"});
  if (auto it = j.find("schema_version"); it != j.end()) {
    if (GetInt(*it, "$.schema_version", 0) != kSpecSchemaVersion) {
      throw Invalid("$.schema_version", "unsupported version");
    }
  }
  ProblemSpec spec;
  spec.group = ParseGroup(Require(j, root, "group"), "$.group");
  spec.n_action = ParseAction(Require(j, root, "n_action"), "$.n_action");
  spec.m_action = ParseAction(Require(j, root, "m_action"), "$.m_action");
  if (auto it = j.find("genset"); it != j.end()) {
    if (!it->is_array()) throw Invalid("$.genset", "expected an array of words");
    for (std::size_t i = 0; i < it->size(); ++i) {
      spec.genset.push_back(GetString((*it)[i], "$.genset[" + std::to_string(i) + "]"));
    }
  }
  const std::string design = GetString(Require(j, root, "design"), "$.design");
  if (design == "dense") {
    spec.design = DesignKind::kDense;
  } else if (design == "sparse") {
    spec.design = DesignKind::kSparse;
  } else {
    throw Invalid("$.design", "expected \"dense\" or \"sparse\"");
  }
  if (auto it = j.find("tie_across_orbits"); it != j.end()) {
    spec.tie_across_orbits = GetBool(*it, "$.tie_across_orbits");
  }
  if (auto it = j.find("channels"); it != j.end()) {
    RequireObject(*it, "$.channels");
    AllowKeys(*it, "$.channels", {"k_in", "k_out"});
    spec.channels.k_in = GetInt(Require(*it, "$.channels", "k_in"), "$.channels.k_in", 1);
    spec.channels.k_out = GetInt(Require(*it, "$.channels", "k_out"), "$.channels.k_out", 1);
  }
  if (auto it = j.find("mode"); it != j.end()) {
    const std::string mode = GetString(*it, "$.mode");
    if (mode == "bipartite") {
      spec.mode = Mode::kBipartite;
    } else if (mode == "digraph") {
      spec.mode = Mode::kDigraph;
    } else {
      throw Invalid("$.mode", "expected \"bipartite\" or \"digraph\"");
    }
  }
  if (spec.tie_across_orbits && spec.design != DesignKind::kSparse) {
    throw Invalid("$.tie_across_orbits", "only applies to the sparse design");
  }
  return spec;
}

Json SpecToJson(const ProblemSpec& spec) {
  Json j;
  j["schema_version"] = kSpecSchemaVersion;
  if (spec.group.named) {
    j["group"] = NamedToJson(*spec.group.named);
  } else {
    Json g;
    g["kind"] = "explicit";
    g["degree"] = spec.group.degree;
    g["generators"] = CyclesToJson(spec.group.generators);
    j["group"] = std::move(g);
  }
  j["n_action"] = ActionToJson(spec.n_action);
  j["m_action"] = ActionToJson(spec.m_action);
  j["genset"] = spec.genset;
  j["design"] = spec.design == DesignKind::kDense ? "dense" : "sparse";
  j["tie_across_orbits"] = spec.tie_across_orbits;
  j["channels"] = {{"k_in", spec.channels.k_in}, {"k_out", spec.channels.k_out}};
  j["mode"] = spec.mode == Mode::kBipartite ? "bipartite" : "digraph";
  return j;
}

std::string PrintSpec(const ProblemSpec& spec) { return SpecToJson(spec).dump(2) + "\n"; }

ElementId EvaluateWord(const PermutationGroup& group, std::string_view word) {
  auto fail = [&](const std::string& what) {
    return Error(ErrorCode::kInvalidArgument, "word \"" + std::string(word) + "\": " + what);
  };
  Permutation acc = Permutation::Identity(group.degree());
  std::istringstream in{std::string(word)};
  std::string token;
  bool any = false;
  while (in >> token) {
    any = true;
    if (token == "e") continue;
    if (token.size() < 2 || token[0] != 'g') throw fail("bad factor \"" + token + "\"");
    const auto caret = token.find('^');
    const std::string index_text = token.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (ec != std::errc() || ptr != index_text.data() + index_text.size() || index_text.empty()) {
      throw fail("bad generator name in \"" + token + "\"");
    }
    if (index >= group.generator_ids().size()) {
      throw fail("no generator g" + std::to_string(index) + " (group has " +
                 std::to_string(group.generator_ids().size()) + ")");
    }
    long long power = 1;
    if (caret != std::string::npos) {
      const std::string exp_text = token.substr(caret + 1);
      auto [p2, ec2] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), power);
      if (ec2 != std::errc() || p2 != exp_text.data() + exp_text.size() || exp_text.empty()) {
        throw fail("bad exponent in \"" + token + "\"");
      }
    }
    Permutation base = group.element(group.generator_ids()[index]);
    if (power < 0) {
      base = Inverse(base);
      power = -power;
    }
    power %= static_cast<long long>(group.order());
    for (long long k = 0; k < power; ++k) acc = Compose(acc, base);
  }
  if (!any) throw fail("empty word");
  return *group.IndexOf(acc);
}

CompiledProblem Compile(const ProblemSpec& spec, std::size_t order_cap) {
  GroupPtr group = AtPath("$.group", [&] {
    GeneratorSet gens = spec.group.named ? NamedGroup(*spec.group.named)
                                         : GeneratorSet{spec.group.degree, spec.group.generators};
    return MakeGroup(CloseGenerators(gens.degree, gens.generators, order_cap));
  });
  GroupAction n_action = AtPath("$.n_action", [&] { return BuildSpecAction(spec.n_action, group); });
  GroupAction m_action = AtPath("$.m_action", [&] { return BuildSpecAction(spec.m_action, group); });
  JointAction base_joint = MakeJointAction(std::move(n_action), std::move(m_action));

  std::set<ElementId> genset;
  if (!spec.genset.empty() || spec.design == DesignKind::kSparse) {
    AtPath("$.genset", [&] {
      std::set<ElementId> words;
      if (spec.genset.empty()) {
        words.insert(group->generator_ids().begin(), group->generator_ids().end());
      }
      for (const std::string& w : spec.genset) words.insert(EvaluateWord(*group, w));
      try {
        genset = SymmetrizeGenset(*group, words);
      } catch (const Error& e) {
        throw Error(e.code(), std::string("symmetrize_genset failed: ") + e.what());
      }
      return 0;
    });
  }

  SharingStructure s = spec.design == DesignKind::kDense
                           ? DenseDesign(base_joint)
                           : AtPath("$.design", [&] { return SparseDesign(base_joint, genset); });
  if (spec.tie_across_orbits) s = TieAcrossOrbits(s);
  s = AtPath("$.channels", [&] { return ExpandChannels(s, spec.channels); });
  JointAction joint = ExpandJoint(base_joint, spec.channels);
  if (spec.mode == Mode::kDigraph) {
    s = AtPath("$.mode", [&] { return WithIdentityRelation(s); });
  }
  return {std::move(group), std::move(base_joint), std::move(joint), std::move(genset),
          std::move(s)};
}

}  // namespace eqshare
