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

#include "eqshare/designs.h"

#include <algorithm>
#include <map>
#include <string>

#include "eqshare/error.h"

namespace eqshare {

SharingStructure::SharingStructure(int n_size, int m_size,
                                   std::vector<Relation> relations,
                                   std::vector<std::string> warnings)
    : n_size_(n_size), m_size_(m_size), relations_(std::move(relations)),
      warnings_(std::move(warnings)) {
  if (n_size < 0 || m_size < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative structure size");
  }
  for (std::size_t c = 0; c < relations_.size(); ++c) {
    Relation& r = relations_[c];
    if (r.color_id != static_cast<int>(c) + 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "relation " + std::to_string(c) + " has color id " +
                      std::to_string(r.color_id) + ", expected " + std::to_string(c + 1));
    }
    std::sort(r.edges.begin(), r.edges.end());
    r.edges.erase(std::unique(r.edges.begin(), r.edges.end()), r.edges.end());
    for (const Edge& e : r.edges) {
      if (e.n < 0 || e.n >= n_size || e.m < 0 || e.m >= m_size) {
        throw Error(ErrorCode::kInvalidArgument,
                    "edge (" + std::to_string(e.n) + ", " + std::to_string(e.m) +
                        ") outside " + std::to_string(n_size) + " x " +
                        std::to_string(m_size));
      }
    }
  }
}

std::vector<std::vector<int>> SharingStructure::CellColors() const {
  std::vector<std::vector<int>> alpha(static_cast<std::size_t>(n_size_) * m_size_);
  for (const Relation& r : relations_) {
    for (const Edge& e : r.edges) alpha[e.m * n_size_ + e.n].push_back(r.color_id);
  }
  return alpha;  // relations are visited in color order, so each cell is sorted
}

ColorMatrix::ColorMatrix(int m_size, int n_size, std::vector<int> grid,
                         std::vector<std::vector<int>> merged_to_base,
                         int base_color_count)
    : m_size_(m_size), n_size_(n_size), grid_(std::move(grid)),
      merged_to_base_(std::move(merged_to_base)), base_color_count_(base_color_count) {
  if (grid_.size() != static_cast<std::size_t>(m_size) * n_size) {
    throw Error(ErrorCode::kSizeMismatch, "color grid has the wrong number of cells");
  }
  for (int id : grid_) {
    if (id < 0 || id > merged_count()) {
      throw Error(ErrorCode::kInvalidArgument, "merged color id out of range");
    }
  }
  for (const auto& base : merged_to_base_) {
    for (int c : base) {
      if (c < 1 || c > base_color_count_) {
        throw Error(ErrorCode::kInvalidArgument, "base color id out of range");
      }
    }
  }
}

std::size_t ColorMatrix::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(grid_.begin(), grid_.end(), [](int id) { return id != 0; }));
}

SharingStructure DenseDesign(const JointAction& joint) {
  const int n_size = joint.n_action().target_size();
  const int m_size = joint.m_action().target_size();
  std::vector<int> color(static_cast<std::size_t>(n_size) * m_size, 0);
  std::vector<Relation> relations;
  for (int m = 0; m < m_size; ++m) {
    for (int n = 0; n < n_size; ++n) {
      if (color[m * n_size + n] != 0) continue;
      const int c = static_cast<int>(relations.size()) + 1;
      Relation r{c, {}, provenance::DenseOrbit{n, m}};
      for (const JointElement& g : joint.elements()) {
        const int gn = g.n(n), gm = g.m(m);
        int& cell = color[gm * n_size + gn];
        if (cell == 0) {
          cell = c;
          r.edges.push_back({gn, gm});
        }
      }
      relations.push_back(std::move(r));
    }
  }
  return SharingStructure(n_size, m_size, std::move(relations));
}

SharingStructure SparseDesign(const JointAction& joint, const std::set<ElementId>& a) {
  const PermutationGroup& group = joint.group();
  if (a.empty() && group.order() > 1) {
    throw Error(ErrorCode::kNotGenerating, "A does not generate G: A is empty");
  }
  for (ElementId x : a) {
    if (x >= group.order()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "element id " + std::to_string(x) + " is not in the group");
    }
  }
  if (!IsSymmetricGenset(group, a)) {
    throw Error(ErrorCode::kAsymmetricGenset,
                "A is not closed under inverse (symmetrize it first)");
  }
  SymmetrizeGenset(group, a);  // throws if A does not generate G

  const GroupAction& na = joint.n_action();
  const GroupAction& ma = joint.m_action();
  const OrbitPartition n_orbits = Orbits(na);
  const OrbitPartition m_orbits = Orbits(ma);
  std::vector<Relation> relations;
  for (int p = 0; p < n_orbits.orbit_count; ++p) {
    for (int q = 0; q < m_orbits.orbit_count; ++q) {
      for (ElementId x : a) {
        Relation r{static_cast<int>(relations.size()) + 1, {},
                   provenance::SparseTriple{p, q, x}};
        const int moved_rep = na.image(x)(n_orbits.representatives[p]);
        const int m_rep = m_orbits.representatives[q];
        for (ElementId g = 0; g < group.order(); ++g) {
          r.edges.push_back({na.image(g)(moved_rep), ma.image(g)(m_rep)});
        }
        relations.push_back(std::move(r));
      }
    }
  }
  std::vector<std::string> warnings;
  if (!ClassifyAction(na).semi_regular || !ClassifyAction(ma).semi_regular) {
    warnings.push_back(
        "input or output action is not semi-regular: uniqueness not guaranteed");
  }
  return SharingStructure(na.target_size(), ma.target_size(), std::move(relations),
                          std::move(warnings));
}

SharingStructure TieAcrossOrbits(const SharingStructure& sparse) {
  std::map<std::pair<int, ElementId>, std::size_t> slot;
  std::vector<Relation> relations;
  for (const Relation& r : sparse.relations()) {
    const auto* t = std::get_if<provenance::SparseTriple>(&r.provenance);
    if (t == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "tying across orbits needs a sparse-design structure");
    }
    auto [it, inserted] = slot.try_emplace({t->q, t->a}, relations.size());
    if (inserted) {
      relations.push_back({static_cast<int>(relations.size()) + 1, {},
                           provenance::TiedAcrossOrbits{t->q, t->a}});
    }
    auto& edges = relations[it->second].edges;
    edges.insert(edges.end(), r.edges.begin(), r.edges.end());
  }
  return SharingStructure(sparse.n_size(), sparse.m_size(), std::move(relations),
                          sparse.warnings());
}

ColorMatrix MergeColors(const SharingStructure& s) {
  const auto alpha = s.CellColors();
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> merged_to_base;
  std::vector<int> grid(alpha.size(), 0);
  for (std::size_t cell = 0; cell < alpha.size(); ++cell) {
    if (alpha[cell].empty()) continue;
    auto [it, inserted] = ids.try_emplace(alpha[cell], static_cast<int>(ids.size()) + 1);
    if (inserted) merged_to_base.push_back(alpha[cell]);
    grid[cell] = it->second;
  }
  return ColorMatrix(s.m_size(), s.n_size(), std::move(grid), std::move(merged_to_base),
                     s.color_count());
}

SharingStructure ExpandChannels(const SharingStructure& s, ChannelSpec ch) {
  if (ch.k_in < 1 || ch.k_out < 1) {
    throw Error(ErrorCode::kInvalidArgument, "channel counts must be positive");
  }
  if (ch.k_in == 1 && ch.k_out == 1) return s;
  std::vector<Relation> relations;
  for (const Relation& base : s.relations()) {
    for (int in = 0; in < ch.k_in; ++in) {
      for (int out = 0; out < ch.k_out; ++out) {
        Relation r{static_cast<int>(relations.size()) + 1, {},
                   provenance::ChannelCopy{base.color_id, in, out}};
        r.edges.reserve(base.edges.size());
        for (const Edge& e : base.edges) {
          r.edges.push_back({in * s.n_size() + e.n, out * s.m_size() + e.m});
        }
        relations.push_back(std::move(r));
      }
    }
  }
  return SharingStructure(s.n_size() * ch.k_in, s.m_size() * ch.k_out,
                          std::move(relations), s.warnings());
}

JointAction ExpandJoint(const JointAction& joint, ChannelSpec ch) {
  return MakeJointAction(ReplicateAction(joint.n_action(), ch.k_in),
                         ReplicateAction(joint.m_action(), ch.k_out));
}

SharingStructure WithIdentityRelation(const SharingStructure& s) {
  if (s.n_size() != s.m_size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "identity relation needs N == M, got " + std::to_string(s.n_size()) +
                    " and " + std::to_string(s.m_size()));
  }
  std::vector<Relation> relations = s.relations();
  Relation diag{static_cast<int>(relations.size()) + 1, {},
                provenance::IdentityRelation{}};
  for (int i = 0; i < s.n_size(); ++i) diag.edges.push_back({i, i});
  relations.push_back(std::move(diag));
  return SharingStructure(s.n_size(), s.m_size(), std::move(relations), s.warnings());
}

}  // namespace eqshare
