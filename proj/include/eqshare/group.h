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

#ifndef EQSHARE_GROUP_H_
#define EQSHARE_GROUP_H_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "eqshare/permutation.h"

namespace eqshare {

using ElementId = std::size_t;

inline constexpr std::size_t kDefaultOrderCap = 10000;

// A finite permutation group stored as an explicit, closed element list.
// Element 0 is the identity; the remaining elements follow breadth-first
// layers of word length in the generators, each layer sorted
// lexicographically by image sequence.
class PermutationGroup {
 public:
  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& element(ElementId id) const { return elements_[id]; }
  // One entry per generator passed to CloseGenerators, in input order.
  const std::vector<ElementId>& generator_ids() const { return generator_ids_; }

  std::optional<ElementId> IndexOf(const Permutation& p) const;
  bool Contains(const Permutation& p) const { return IndexOf(p).has_value(); }
  // Id of Compose(element(a), element(b)).
  ElementId Multiply(ElementId a, ElementId b) const;
  ElementId InverseOf(ElementId a) const;

  friend PermutationGroup CloseGenerators(int degree,
                                          std::span<const Permutation> gens,
                                          std::size_t cap);

 private:
  int degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<ElementId> generator_ids_;
  std::unordered_map<Permutation, ElementId, PermutationHash> index_;
};

// Breadth-first closure of `gens` under composition. Throws
// Error(kOrderCapExceeded) once more than `cap` elements are found and
// Error(kDegreeMismatch) if a generator has the wrong degree.
PermutationGroup CloseGenerators(int degree, std::span<const Permutation> gens,
                                 std::size_t cap = kDefaultOrderCap);

// Generators of a standard group together with the number of points moved.
struct GeneratorSet {
  int degree = 0;
  std::vector<Permutation> generators;
};

// Z_n as the single n-cycle i -> i+1.
GeneratorSet CyclicGenerators(int n);
// D_n on n points: the n-cycle and the reflection i -> n-1-i.
GeneratorSet DihedralGenerators(int n);
// S_n: the transposition (0 1) and the n-cycle.
GeneratorSet SymmetricGenerators(int n);
// S_d wr S_D on d*D points laid out block-major (point = block*d + i):
// S_d generators inside block 0 plus S_D generators permuting whole blocks.
GeneratorSet WreathGenerators(int d, int big_d);
// Factors act on consecutive disjoint point ranges.
GeneratorSet DirectProductGenerators(std::span<const GeneratorSet> factors);

enum class GroupKind { kCyclic, kDihedral, kSymmetric, kWreath, kDirectProduct };

struct NamedGroupSpec {
  GroupKind kind = GroupKind::kCyclic;
  int n = 1;          // cyclic, dihedral, symmetric
  int d = 1;          // wreath: block size
  int blocks = 1;     // wreath: number of blocks
  std::vector<NamedGroupSpec> factors;  // direct product

  friend bool operator==(const NamedGroupSpec&, const NamedGroupSpec&) = default;
};

// Dispatches to the constructors above. Throws Error(kInvalidArgument) for
// parameters below 1 or an empty direct product.
GeneratorSet NamedGroup(const NamedGroupSpec& spec);

// A u A^{-1}, after checking that A generates the whole group.
// Throws Error(kNotGenerating) otherwise.
std::set<ElementId> SymmetrizeGenset(const PermutationGroup& group,
                                     const std::set<ElementId>& a);

bool IsSymmetricGenset(const PermutationGroup& group,
                       const std::set<ElementId>& a);

}  // namespace eqshare

#endif  // EQSHARE_GROUP_H_
