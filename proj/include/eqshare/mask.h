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

#ifndef EQSHARE_MASK_H_
#define EQSHARE_MASK_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqshare/designs.h"
#include "eqshare/problem.h"

namespace eqshare {

inline constexpr int kMaskSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

struct BaseColorInfo {
  int id = 0;
  std::size_t edge_count = 0;
  Json provenance;

  friend bool operator==(const BaseColorInfo&, const BaseColorInfo&) = default;
};

struct CertificationBlock {
  std::uint64_t aut_order = 0;
  std::size_t joint_order = 0;
  std::string verdict;  // "unique" | "supergroup"
  std::uint64_t seed = 0;
  std::string tool_version;

  friend bool operator==(const CertificationBlock&, const CertificationBlock&) = default;
};

// Framework-neutral weight-tying mask. Indices are 0-based and channel-major:
// input node c * base_n_size + i, output node c * base_m_size + j.
struct MaskExport {
  int schema_version = kMaskSchemaVersion;
  int n_size = 0;
  int m_size = 0;
  ChannelSpec channels;
  int base_n_size = 0;
  int base_m_size = 0;
  std::vector<int> grid;  // row-major m_size x n_size merged ids, 0 = no edge
  std::vector<std::vector<int>> merged_to_base;
  std::vector<BaseColorInfo> base_colors;
  std::vector<std::string> warnings;
  std::optional<CertificationBlock> certification;

  friend bool operator==(const MaskExport&, const MaskExport&) = default;
};

Json ProvenanceToJson(const Provenance& p);

MaskExport MakeMaskExport(const SharingStructure& s, ChannelSpec channels,
                          std::optional<CertificationBlock> certification);
Json MaskToJson(const MaskExport& mask);
// Throws Error(kSpecInvalid) naming the offending path.
MaskExport ParseMask(std::string_view text);

// Graphviz rendering. Bipartite: inputs and outputs on two ranks, one
// undirected edge per (relation, edge). Digraph: one node per index and a
// directed edge n -> m per edge; the identity relation is implicit.
std::string ToDot(const SharingStructure& s, Mode mode);

}  // namespace eqshare

#endif  // EQSHARE_MASK_H_
