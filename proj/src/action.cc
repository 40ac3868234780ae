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

#include "eqshare/action.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "eqshare/error.h"

namespace eqshare {

std::vector<Permutation> GroupAction::GeneratorImages() const {
  std::vector<Permutation> out;
  for (ElementId g : group_->generator_ids()) out.push_back(images_[g]);
  return out;
}

GroupAction BuildAction(GroupPtr group, std::span<const Permutation> gen_images,
                        int target_size) {
  const auto& gen_ids = group->generator_ids();
  if (gen_images.size() != gen_ids.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "expected " + std::to_string(gen_ids.size()) +
                    " generator images, got " + std::to_string(gen_images.size()));
  }
  for (const Permutation& img : gen_images) {
    if (img.degree() != target_size) {
      throw Error(ErrorCode::kSizeMismatch,
                  "generator image " + ToCycleString(img) + " has degree " +
                      std::to_string(img.degree()) + ", target set has " +
                      std::to_string(target_size) + " points");
    }
  }
  // Walk the Cayley graph x -> gen*x from the identity, carrying the image;
  // every edge must agree with the image already assigned to its head.
  std::vector<std::optional<Permutation>> assigned(group->order());
  assigned[0] = Permutation::Identity(target_size);
  std::vector<ElementId> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ElementId x = queue[head];
    for (std::size_t k = 0; k < gen_ids.size(); ++k) {
      const ElementId y = group->Multiply(gen_ids[k], x);
      Permutation image = Compose(gen_images[k], *assigned[x]);
      if (!assigned[y]) {
        assigned[y] = std::move(image);
        queue.push_back(y);
      } else if (*assigned[y] != image) {
        throw Error(ErrorCode::kInconsistentAction,
                    "inconsistent action: element " + ToCycleString(group->element(y)) +
                        " receives images " + ToCycleString(*assigned[y]) + " and " +
                        ToCycleString(image));
      }
    }
  }
  GroupAction action;
  action.group_ = std::move(group);
  action.target_size_ = target_size;
  action.images_.reserve(assigned.size());
  for (auto& img : assigned) action.images_.push_back(std::move(*img));
  return action;
}

GroupAction NaturalAction(GroupPtr group) {
  std::vector<Permutation> gens;
  for (ElementId g : group->generator_ids()) gens.push_back(group->element(g));
  const int degree = group->degree();
  return BuildAction(std::move(group), gens, degree);
}

GroupAction RegularAction(GroupPtr group) {
  std::vector<Permutation> gens;
  const int order = static_cast<int>(group->order());
  for (ElementId g : group->generator_ids()) {
    std::vector<int> images(order);
    for (int h = 0; h < order; ++h) images[h] = static_cast<int>(group->Multiply(g, h));
    gens.emplace_back(std::move(images));
  }
  return BuildAction(std::move(group), gens, order);
}

GroupAction TrivialAction(GroupPtr group, int target_size) {
  std::vector<Permutation> gens(group->generator_ids().size(),
                                Permutation::Identity(target_size));
  return BuildAction(std::move(group), gens, target_size);
}

GroupAction ReplicateAction(const GroupAction& action, int copies) {
  if (copies < 1) throw Error(ErrorCode::kInvalidArgument, "copies must be positive");
  const int n = action.target_size();
  std::vector<Permutation> gens;
  for (const Permutation& img : action.GeneratorImages()) {
    std::vector<int> images(n * copies);
    for (int c = 0; c < copies; ++c) {
      for (int i = 0; i < n; ++i) images[c * n + i] = c * n + img(i);
    }
    gens.emplace_back(std::move(images));
  }
  return BuildAction(action.group_ptr(), gens, n * copies);
}

std::vector<std::vector<int>> OrbitPartition::Members() const {
  std::vector<std::vector<int>> out(orbit_count);
  for (std::size_t i = 0; i < orbit_of.size(); ++i) out[orbit_of[i]].push_back(static_cast<int>(i));
  return out;
}

namespace {

int Find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

OrbitPartition Orbits(const GroupAction& action) {
  const int n = action.target_size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const Permutation& g : action.GeneratorImages()) {
    for (int i = 0; i < n; ++i) {
      int a = Find(parent, i), b = Find(parent, g(i));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  OrbitPartition out;
  out.orbit_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = Find(parent, i);  // roots are orbit minima
    if (root == i) {
      out.orbit_of[i] = out.orbit_count++;
      out.representatives.push_back(i);
    } else {
      out.orbit_of[i] = out.orbit_of[root];
    }
  }
  return out;
}

ActionProfile ClassifyAction(const GroupAction& action) {
  ActionProfile profile;
  std::set<Permutation> distinct;
  for (const Permutation& img : action.images()) {
    if (img.IsIdentity()) ++profile.kernel_size;
    distinct.insert(img);
  }
  profile.image_order = distinct.size();
  profile.faithful = profile.kernel_size == 1;
  profile.transitive = Orbits(action).orbit_count <= 1;
  profile.semi_regular = true;
  for (const Permutation& img : distinct) {
    if (img.IsIdentity()) continue;
    for (int i = 0; i < img.degree(); ++i) {
      if (img(i) == i) {
        profile.semi_regular = false;
        break;
      }
    }
    if (!profile.semi_regular) break;
  }
  profile.regular = profile.transitive && profile.semi_regular;
  return profile;
}

FaithfulImage ComputeFaithfulImage(const GroupAction& action) {
  const std::vector<Permutation> gens = action.GeneratorImages();
  return {CloseGenerators(action.target_size(), gens, action.group().order()),
          ClassifyAction(action)};
}

std::vector<JointElement> JointAction::Generators() const {
  std::vector<JointElement> out;
  for (ElementId g : group().generator_ids()) {
    out.push_back({n_action_.image(g), m_action_.image(g)});
  }
  return out;
}

bool JointAction::Contains(const JointElement& e) const {
  return std::find(elements_.begin(), elements_.end(), e) != elements_.end();
}

bool SameGroup(const PermutationGroup& a, const PermutationGroup& b) {
  return &a == &b || (a.degree() == b.degree() && a.elements() == b.elements());
}

JointAction MakeJointAction(GroupAction n_action, GroupAction m_action) {
  if (!SameGroup(n_action.group(), m_action.group())) {
    throw Error(ErrorCode::kGroupMismatch,
                "reference-group mismatch: input and output actions are over "
                "different groups");
  }
  JointAction joint(std::move(n_action), std::move(m_action));
  std::set<JointElement> seen;
  for (ElementId g = 0; g < joint.group().order(); ++g) {
    JointElement e{joint.n_action_.image(g), joint.m_action_.image(g)};
    if (seen.insert(e).second) joint.elements_.push_back(std::move(e));
  }
  return joint;
}

JointAction RestrictToSubgroup(const JointAction& joint,
                               std::span<const ElementId> generators) {
  const PermutationGroup& g = joint.group();
  std::vector<Permutation> ref, n_imgs, m_imgs;
  for (ElementId id : generators) {
    if (id >= g.order()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "element id " + std::to_string(id) + " is not in the group");
    }
    ref.push_back(g.element(id));
    n_imgs.push_back(joint.n_action().image(id));
    m_imgs.push_back(joint.m_action().image(id));
  }
  GroupPtr sub = MakeGroup(CloseGenerators(g.degree(), ref, g.order()));
  return MakeJointAction(BuildAction(sub, n_imgs, joint.n_action().target_size()),
                         BuildAction(sub, m_imgs, joint.m_action().target_size()));
}

}  // namespace eqshare
