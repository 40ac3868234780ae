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

#ifndef EQSHARE_ACTION_H_
#define EQSHARE_ACTION_H_

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "eqshare/group.h"
#include "eqshare/permutation.h"

namespace eqshare {

using GroupPtr = std::shared_ptr<const PermutationGroup>;

inline GroupPtr MakeGroup(PermutationGroup group) {
  return std::make_shared<const PermutationGroup>(std::move(group));
}

// An action of a reference group on {0, ..., target_size-1}: one target
// permutation per reference element, indexed like group().elements().
class GroupAction {
 public:
  const PermutationGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int target_size() const { return target_size_; }
  const Permutation& image(ElementId g) const { return images_[g]; }
  const std::vector<Permutation>& images() const { return images_; }
  // Images of the reference generators, in generator order.
  std::vector<Permutation> GeneratorImages() const;

  friend GroupAction BuildAction(GroupPtr group,
                                 std::span<const Permutation> gen_images,
                                 int target_size);

 private:
  GroupPtr group_;
  int target_size_ = 0;
  std::vector<Permutation> images_;
};

// Extends one image per generator to a homomorphism on the whole group.
// Throws Error(kInconsistentAction) if some element would receive two
// different images, Error(kSizeMismatch) for a wrong image count or degree.
GroupAction BuildAction(GroupPtr group, std::span<const Permutation> gen_images,
                        int target_size);

// The reference permutations acting on their own points.
GroupAction NaturalAction(GroupPtr group);
// Left multiplication on the group itself; point k is element k, so point 0
// is the identity.
GroupAction RegularAction(GroupPtr group);
GroupAction TrivialAction(GroupPtr group, int target_size);
// `copies` side-by-side copies of the target set, copy-major:
// point c*target_size + i carries the image c*target_size + g(i).
GroupAction ReplicateAction(const GroupAction& action, int copies);

struct OrbitPartition {
  std::vector<int> orbit_of;
  // Smallest point of each orbit; orbits are numbered by increasing
  // representative.
  std::vector<int> representatives;
  int orbit_count = 0;

  std::vector<std::vector<int>> Members() const;
};

struct ActionProfile {
  bool faithful = false;
  bool transitive = false;
  bool semi_regular = false;
  bool regular = false;
  std::size_t kernel_size = 0;
  std::size_t image_order = 0;

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;
};

OrbitPartition Orbits(const GroupAction& action);
ActionProfile ClassifyAction(const GroupAction& action);

struct FaithfulImage {
  PermutationGroup image;
  ActionProfile profile;
};

// The deduplicated image group G^N (closed from the generator images, so its
// element order is canonical) together with the action profile.
FaithfulImage ComputeFaithfulImage(const GroupAction& action);

struct JointElement {
  Permutation n;
  Permutation m;

  friend bool operator==(const JointElement&, const JointElement&) = default;
  friend auto operator<=>(const JointElement&, const JointElement&) = default;
};

// The pairing {(g^N, g^M) : g in G}.
class JointAction {
 public:
  const PermutationGroup& group() const { return n_action_.group(); }
  const GroupAction& n_action() const { return n_action_; }
  const GroupAction& m_action() const { return m_action_; }
  // Deduplicated, in order of first occurrence over reference elements.
  const std::vector<JointElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  // Pairs at the reference generator ids.
  std::vector<JointElement> Generators() const;
  bool Contains(const JointElement& e) const;

  friend JointAction MakeJointAction(GroupAction n_action, GroupAction m_action);

 private:
  JointAction(GroupAction n, GroupAction m)
      : n_action_(std::move(n)), m_action_(std::move(m)) {}

  GroupAction n_action_;
  GroupAction m_action_;
  std::vector<JointElement> elements_;
};

// Throws Error(kGroupMismatch) unless both actions share one reference group.
JointAction MakeJointAction(GroupAction n_action, GroupAction m_action);

// The joint action of the subgroup generated by the given reference elements.
JointAction RestrictToSubgroup(const JointAction& joint,
                               std::span<const ElementId> generators);

bool SameGroup(const PermutationGroup& a, const PermutationGroup& b);

}  // namespace eqshare

#endif  // EQSHARE_ACTION_H_
