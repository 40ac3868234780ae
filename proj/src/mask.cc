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

#include "eqshare/mask.h"

#include <sstream>
#include <type_traits>

#include "eqshare/error.h"

namespace eqshare {
namespace {

Error Invalid(const std::string& path, const std::string& what) {
  return Error(ErrorCode::kSpecInvalid, path + ": " + what);
}

const Json& Field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw Invalid(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw Invalid(path + "." + key, "missing required field");
  return *it;
}

template <typename T>
T As(const Json& j, const std::string& path) {
  try {
    if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!j.is_number_integer()) throw Invalid(path, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0) {
          throw Invalid(path, "expected a nonnegative integer");
        }
      }
    }
    return j.get<T>();
  } catch (const Json::exception&) {
    throw Invalid(path, "wrong type");
  }
}

std::vector<int> IntList(const Json& j, const std::string& path) {
  if (!j.is_array()) throw Invalid(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(As<int>(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

const char* DotColor(int color_id) {
  static constexpr const char* kPalette[] = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
      "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return kPalette[(color_id - 1) % 10];
}

}  // namespace

Json ProvenanceToJson(const Provenance& p) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, provenance::DenseOrbit>) {
          return {{"kind", "dense_orbit"}, {"n", v.n}, {"m", v.m}};
        } else if constexpr (std::is_same_v<T, provenance::SparseTriple>) {
          return {{"kind", "sparse"}, {"p", v.p}, {"q", v.q}, {"a", v.a}};
        } else if constexpr (std::is_same_v<T, provenance::TiedAcrossOrbits>) {
          return {{"kind", "tied"}, {"q", v.q}, {"a", v.a}};
        } else if constexpr (std::is_same_v<T, provenance::IdentityRelation>) {
          return {{"kind", "identity"}};
        } else if constexpr (std::is_same_v<T, provenance::ChannelCopy>) {
          return {{"kind", "channel"},
                  {"base_color", v.base_color},
                  {"in_channel", v.in_channel},
                  {"out_channel", v.out_channel}};
        } else {
          return {{"kind", "explicit"}, {"label", v.label}};
        }
      },
      p);
}

MaskExport MakeMaskExport(const SharingStructure& s, ChannelSpec channels,
                          std::optional<CertificationBlock> certification) {
  if (channels.k_in < 1 || channels.k_out < 1 || s.n_size() % channels.k_in != 0 ||
      s.m_size() % channels.k_out != 0) {
    throw Error(ErrorCode::kInvalidArgument, "channel counts do not divide the sizes");
  }
  const ColorMatrix cm = MergeColors(s);
  MaskExport mask;
  mask.n_size = s.n_size();
  mask.m_size = s.m_size();
  mask.channels = channels;
  mask.base_n_size = s.n_size() / channels.k_in;
  mask.base_m_size = s.m_size() / channels.k_out;
  mask.grid = cm.grid();
  mask.merged_to_base = cm.merged_to_base();
  for (const Relation& r : s.relations()) {
    mask.base_colors.push_back({r.color_id, r.edges.size(), ProvenanceToJson(r.provenance)});
  }
  mask.warnings = s.warnings();
  mask.certification = std::move(certification);
  return mask;
}

Json MaskToJson(const MaskExport& mask) {
  Json j;
  j["schema_version"] = mask.schema_version;
  j["n_size"] = mask.n_size;
  j["m_size"] = mask.m_size;
  j["channels"] = {{"k_in", mask.channels.k_in}, {"k_out", mask.channels.k_out}};
  j["base_n_size"] = mask.base_n_size;
  j["base_m_size"] = mask.base_m_size;
  Json grid = Json::array();
  for (int m = 0; m < mask.m_size; ++m) {
    grid.push_back(std::vector<int>(mask.grid.begin() + m * mask.n_size,
                                    mask.grid.begin() + (m + 1) * mask.n_size));
  }
  j["grid"] = std::move(grid);
  j["merged_to_base"] = mask.merged_to_base;
  Json colors = Json::array();
  for (const BaseColorInfo& c : mask.base_colors) {
    colors.push_back({{"id", c.id}, {"edge_count", c.edge_count}, {"provenance", c.provenance}});
  }
  j["base_colors"] = std::move(colors);
  j["warnings"] = mask.warnings;
  if (mask.certification) {
    const CertificationBlock& c = *mask.certification;
    j["certification"] = {{"aut_order", c.aut_order},
                          {"joint_order", c.joint_order},
                          {"verdict", c.verdict},
                          {"seed", c.seed},
                          {"tool_version", c.tool_version}};
  }
  return j;
}

MaskExport ParseMask(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSpecSyntax, e.what());
  }
  MaskExport mask;
  mask.schema_version = As<int>(Field(j, "$", "schema_version"), "$.schema_version");
  if (mask.schema_version != kMaskSchemaVersion) {
    throw Invalid("$.schema_version", "unsupported version");
  }
  mask.n_size = As<int>(Field(j, "$", "n_size"), "$.n_size");
  mask.m_size = As<int>(Field(j, "$", "m_size"), "$.m_size");
  const Json& ch = Field(j, "$", "channels");
  mask.channels.k_in = As<int>(Field(ch, "$.channels", "k_in"), "$.channels.k_in");
  mask.channels.k_out = As<int>(Field(ch, "$.channels", "k_out"), "$.channels.k_out");
  mask.base_n_size = As<int>(Field(j, "$", "base_n_size"), "$.base_n_size");
  mask.base_m_size = As<int>(Field(j, "$", "base_m_size"), "$.base_m_size");
  const Json& grid = Field(j, "$", "grid");
  if (!grid.is_array() || static_cast<int>(grid.size()) != mask.m_size) {
    throw Invalid("$.grid", "expected m_size rows");
  }
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const std::string at = "$.grid[" + std::to_string(m) + "]";
    std::vector<int> row = IntList(grid[m], at);
    if (static_cast<int>(row.size()) != mask.n_size) throw Invalid(at, "expected n_size entries");
    mask.grid.insert(mask.grid.end(), row.begin(), row.end());
  }
  const Json& merged = Field(j, "$", "merged_to_base");
  if (!merged.is_array()) throw Invalid("$.merged_to_base", "expected an array");
  for (std::size_t k = 0; k < merged.size(); ++k) {
    mask.merged_to_base.push_back(IntList(merged[k], "$.merged_to_base[" + std::to_string(k) + "]"));
  }
  const Json& colors = Field(j, "$", "base_colors");
  if (!colors.is_array()) throw Invalid("$.base_colors", "expected an array");
  for (std::size_t k = 0; k < colors.size(); ++k) {
    const std::string at = "$.base_colors[" + std::to_string(k) + "]";
    BaseColorInfo c;
    c.id = As<int>(Field(colors[k], at, "id"), at + ".id");
    c.edge_count = As<std::size_t>(Field(colors[k], at, "edge_count"), at + ".edge_count");
    c.provenance = Field(colors[k], at, "provenance");
    mask.base_colors.push_back(std::move(c));
  }
  const Json& warnings = Field(j, "$", "warnings");
  if (!warnings.is_array()) throw Invalid("$.warnings", "expected an array");
  for (std::size_t k = 0; k < warnings.size(); ++k) {
    mask.warnings.push_back(As<std::string>(warnings[k], "$.warnings[" + std::to_string(k) + "]"));
  }
  if (auto it = j.find("certification"); it != j.end()) {
    const std::string at = "$.certification";
    CertificationBlock c;
    c.aut_order = As<std::uint64_t>(Field(*it, at, "aut_order"), at + ".aut_order");
    c.joint_order = As<std::size_t>(Field(*it, at, "joint_order"), at + ".joint_order");
    c.verdict = As<std::string>(Field(*it, at, "verdict"), at + ".verdict");
    c.seed = As<std::uint64_t>(Field(*it, at, "seed"), at + ".seed");
    c.tool_version = As<std::string>(Field(*it, at, "tool_version"), at + ".tool_version");
    mask.certification = std::move(c);
  }
  return mask;
}

std::string ToDot(const SharingStructure& s, Mode mode) {
  std::ostringstream out;
  if (mode == Mode::kBipartite) {
    out << "graph sharing {\n  rankdir=LR;\n";
    out << "  { rank=same;";
    for (int n = 0; n < s.n_size(); ++n) out << " n" << n << ";";
    out << " }\n  { rank=same;";
    for (int m = 0; m < s.m_size(); ++m) out << " m" << m << ";";
    out << " }\n";
    for (const Relation& r : s.relations()) {
      for (const Edge& e : r.edges) {
        out << "  n" << e.n << " -- m" << e.m << " [color=\"" << DotColor(r.color_id)
            << "\", label=\"" << r.color_id << "\"];\n";
      }
    }
  } else {
    out << "digraph sharing {\n";
    for (int v = 0; v < s.n_size(); ++v) out << "  v" << v << ";\n";
    for (const Relation& r : s.relations()) {
      if (std::holds_alternative<provenance::IdentityRelation>(r.provenance)) continue;
      for (const Edge& e : r.edges) {
        out << "  v" << e.n << " -> v" << e.m << " [color=\"" << DotColor(r.color_id)
            << "\", label=\"" << r.color_id << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace eqshare
