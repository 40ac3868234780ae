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

#ifndef EQSHARE_AUTSEARCH_H_
#define EQSHARE_AUTSEARCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "eqshare/action.h"
#include "eqshare/designs.h"

namespace eqshare {

// Result of iterated color refinement on a structure. Nodes 0..N-1 are the
// input part, N..N+M-1 the output part. Class ids are canonical: they depend
// only on the structure up to relabeling, never on node numbering.
struct ColorProfileTable {
  // Sorted (color, direction) multiset per node before refinement; direction
  // is 0 for edges seen from the input side and 1 from the output side.
  std::vector<std::vector<std::pair<int, int>>> signatures;
  std::vector<int> n_class;
  std::vector<int> m_class;
  int class_count = 0;
  int rounds = 0;
};

ColorProfileTable ColorRefine(const SharingStructure& s);

struct SearchLimits {
  std::size_t node_budget = 24;      // N + M
  std::size_t element_cap = 10000;   // automorphisms kept explicitly
  std::size_t search_cap = 20000000; // search-tree nodes
};

enum class Verdict { kEqual, kProperSupergroup, kIncomparable };

struct AutomorphismResult {
  std::uint64_t order = 0;
  // Every automorphism, sorted, when order <= element_cap; empty otherwise.
  std::vector<JointElement> elements;
  bool complete = false;
  // Always populated; generates the whole group.
  std::vector<JointElement> generators;
  std::optional<Verdict> verdict;
  std::size_t search_nodes = 0;

  bool Contains(const JointElement& e) const;
};

// True iff (pn, pm) maps every relation onto itself.
bool PreservesColors(const SharingStructure& s, const Permutation& pn,
                     const Permutation& pm);

// Exact enumeration of aut(s) by individualization and refinement. Throws
// Error(kNodeBudgetExceeded) when N + M exceeds the budget and
// Error(kSearchCapExceeded) when the search tree grows past its cap.
AutomorphismResult EnumerateAutomorphisms(const SharingStructure& s,
                                          const JointAction* reference = nullptr,
                                          const SearchLimits& limits = {});

enum class Uniqueness { kUnique, kSupergroup };

struct Certificate {
  Uniqueness verdict = Uniqueness::kUnique;
  std::uint64_t aut_order = 0;
  std::size_t joint_order = 0;
  // An automorphism outside the joint group when the verdict is kSupergroup.
  std::optional<JointElement> witness;
};

// Throws Error(kDesignInvariant) if some joint element does not preserve the
// colors, which means the structure was not built from `joint`.
Certificate CertifyUnique(const SharingStructure& s, const JointAction& joint,
                          const SearchLimits& limits = {});

}  // namespace eqshare

#endif  // EQSHARE_AUTSEARCH_H_
