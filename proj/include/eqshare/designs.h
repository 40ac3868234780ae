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

#ifndef EQSHARE_DESIGNS_H_
#define EQSHARE_DESIGNS_H_

#include <cstddef>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "eqshare/action.h"

namespace eqshare {

// An edge from input node n to output node m.
struct Edge {
  int n = 0;
  int m = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace provenance {
// Orbit of the representative edge (n, m) under the joint group.
struct DenseOrbit {
  int n = 0;
  int m = 0;
  friend bool operator==(const DenseOrbit&, const DenseOrbit&) = default;
};
// Input orbit p, output orbit q, generating-set element a.
struct SparseTriple {
  int p = 0;
  int q = 0;
  ElementId a = 0;
  friend bool operator==(const SparseTriple&, const SparseTriple&) = default;
};
// Union of the sparse relations (p, q, a) over all input orbits p.
struct TiedAcrossOrbits {
  int q = 0;
  ElementId a = 0;
  friend bool operator==(const TiedAcrossOrbits&, const TiedAcrossOrbits&) = default;
};
struct IdentityRelation {
  friend bool operator==(const IdentityRelation&, const IdentityRelation&) = default;
};
struct ChannelCopy {
  int base_color = 0;
  int in_channel = 0;
  int out_channel = 0;
  friend bool operator==(const ChannelCopy&, const ChannelCopy&) = default;
};
// Supplied directly, e.g. the edges of an adjacency matrix.
struct Explicit {
  std::string label;
  friend bool operator==(const Explicit&, const Explicit&) = default;
};
}  // namespace provenance

using Provenance =
    std::variant<provenance::DenseOrbit, provenance::SparseTriple,
                 provenance::TiedAcrossOrbits, provenance::IdentityRelation,
                 provenance::ChannelCopy, provenance::Explicit>;

struct Relation {
  int color_id = 0;
  std::vector<Edge> edges;  // sorted, unique
  Provenance provenance;

  friend bool operator==(const Relation&, const Relation&) = default;
};

// The colored multi-edged bipartite graph: one relation (edge set) per color.
// Color ids run 1..C in relation order. Relations may overlap.
class SharingStructure {
 public:
  SharingStructure() = default;
  // Sorts and deduplicates each edge list, then validates bounds and color
  // numbering (Error(kInvalidArgument)).
  SharingStructure(int n_size, int m_size, std::vector<Relation> relations,
                   std::vector<std::string> warnings = {});

  int n_size() const { return n_size_; }
  int m_size() const { return m_size_; }
  const std::vector<Relation>& relations() const { return relations_; }
  int color_count() const { return static_cast<int>(relations_.size()); }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // alpha(n, m): sorted color ids on the cell, indexed [m * n_size + n].
  std::vector<std::vector<int>> CellColors() const;

  friend bool operator==(const SharingStructure&, const SharingStructure&) = default;

 private:
  int n_size_ = 0;
  int m_size_ = 0;
  std::vector<Relation> relations_;
  std::vector<std::string> warnings_;
};

// Merged single-edge form: cell ids 1..K over an m_size x n_size grid, where
// two cells share an id iff they carry the same nonempty color set.
class ColorMatrix {
 public:
  ColorMatrix(int m_size, int n_size, std::vector<int> grid,
              std::vector<std::vector<int>> merged_to_base, int base_color_count);

  int m_size() const { return m_size_; }
  int n_size() const { return n_size_; }
  int cell(int m, int n) const { return grid_[m * n_size_ + n]; }
  const std::vector<int>& grid() const { return grid_; }
  // merged_to_base()[k - 1] is the base color set of merged id k.
  const std::vector<std::vector<int>>& merged_to_base() const { return merged_to_base_; }
  int merged_count() const { return static_cast<int>(merged_to_base_.size()); }
  int base_color_count() const { return base_color_count_; }
  std::size_t nonzero_count() const;

  friend bool operator==(const ColorMatrix&, const ColorMatrix&) = default;

 private:
  int m_size_;
  int n_size_;
  std::vector<int> grid_;
  std::vector<std::vector<int>> merged_to_base_;
  int base_color_count_;
};

struct ChannelSpec {
  int k_in = 1;
  int k_out = 1;

  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

// One color per orbit of the joint group on N x M. Colors are numbered by the
// first cell reached in row-major (m, n) order.
SharingStructure DenseDesign(const JointAction& joint);

// One relation per (input orbit p, output orbit q, a in A) with edges
// {(g^N a^N n_p, g^M m_q) : g in G}. `a` must be symmetric
// (Error(kAsymmetricGenset)) and generate G (Error(kNotGenerating)). When
// either action is not semi-regular the result carries a warning.
SharingStructure SparseDesign(const JointAction& joint, const std::set<ElementId>& a);

// Merges sparse relations that differ only in the input orbit p.
SharingStructure TieAcrossOrbits(const SharingStructure& sparse);

ColorMatrix MergeColors(const SharingStructure& s);

// Input node i of channel c becomes c * n_size + i (likewise for outputs).
// Base color b yields colors for every (in, out) channel pair, numbered
// ((b - 1) * k_in + in) * k_out + out + 1. (1, 1) returns `s` unchanged.
SharingStructure ExpandChannels(const SharingStructure& s, ChannelSpec ch);

// The joint action replicated over channels, matching ExpandChannels.
JointAction ExpandJoint(const JointAction& joint, ChannelSpec ch);

// Appends the relation {(n, n)} under a fresh color. Requires N == M.
SharingStructure WithIdentityRelation(const SharingStructure& s);

}  // namespace eqshare

#endif  // EQSHARE_DESIGNS_H_
