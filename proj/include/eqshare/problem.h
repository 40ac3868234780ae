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

#ifndef EQSHARE_PROBLEM_H_
#define EQSHARE_PROBLEM_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eqshare/action.h"
#include "eqshare/designs.h"
#include "eqshare/group.h"
#include "json.hpp"

namespace eqshare {

using Json = nlohmann::ordered_json;

inline constexpr int kSpecSchemaVersion = 1;

// Either a named group or explicit generators in cycle notation.
struct GroupSpec {
  std::optional<NamedGroupSpec> named;
  int degree = 0;
  std::vector<Permutation> generators;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

enum class ActionKind { kImages, kNatural, kRegular, kTrivial };

struct ActionSpec {
  ActionKind kind = ActionKind::kNatural;
  int size = 0;                        // kImages, kTrivial
  std::vector<Permutation> generators; // kImages: one image per group generator

  friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

enum class DesignKind { kDense, kSparse };
enum class Mode { kBipartite, kDigraph };

struct ProblemSpec {
  GroupSpec group;
  ActionSpec n_action;
  ActionSpec m_action;
  std::vector<std::string> genset;  // words over g0, g1, ...
  DesignKind design = DesignKind::kDense;
  bool tie_across_orbits = false;
  ChannelSpec channels;
  Mode mode = Mode::kBipartite;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

// Throws Error(kSpecSyntax) with the 0-based byte offset for malformed JSON
// and Error(kSpecInvalid) naming the JSON path for everything else,
// including unknown fields.
ProblemSpec ParseSpec(std::string_view text);
Json SpecToJson(const ProblemSpec& spec);
std::string PrintSpec(const ProblemSpec& spec);

// A word such as "g0 g1^-1 g0^2"; "e" is the identity. Factors are composed
// left to right as written, so the rightmost factor acts first.
ElementId EvaluateWord(const PermutationGroup& group, std::string_view word);

struct CompiledProblem {
  GroupPtr group;
  JointAction base_joint;  // before channel replication
  JointAction joint;       // acts on the final structure
  std::set<ElementId> genset;
  SharingStructure structure;
};

// Builds the group, actions, and the requested design. Spec-level failures
// keep their error codes and are prefixed with the spec path when known.
CompiledProblem Compile(const ProblemSpec& spec, std::size_t order_cap = kDefaultOrderCap);

}  // namespace eqshare

#endif  // EQSHARE_PROBLEM_H_
