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

#include "eqshare/autsearch.h"

#include <algorithm>
#include <map>
#include <string>

#include "eqshare/error.h"

namespace eqshare {

bool AutomorphismResult::Contains(const JointElement& e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

bool PreservesColors(const SharingStructure& s, const Permutation& pn,
                     const Permutation& pm) {
  if (pn.degree() != s.n_size() || pm.degree() != s.m_size()) return false;
  for (const Relation& r : s.relations()) {
    for (const Edge& e : r.edges) {
      if (!std::binary_search(r.edges.begin(), r.edges.end(), Edge{pn(e.n), pm(e.m)})) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::uint64_t Mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdull;
}

struct Coloring {
  std::vector<int> color;
  int classes = 0;
  std::uint64_t trace = 0;
  int rounds = 0;
};

// The structure as a labeled graph on N + M nodes. A label is the id of the
// full color set alpha(n, m), so multi-edges count as one labeled edge.
class LabeledGraph {
 public:
  explicit LabeledGraph(const SharingStructure& s)
      : n_(s.n_size()), m_(s.m_size()), labels_(static_cast<std::size_t>(n_) * m_, 0),
        adj_(n_ + m_) {
    const auto alpha = s.CellColors();
    std::map<std::vector<int>, int> ids;
    for (const auto& set : alpha) {
      if (!set.empty()) ids.emplace(set, 0);
    }
    int next = 1;
    for (auto& [set, id] : ids) id = next++;
    for (int m = 0; m < m_; ++m) {
      for (int n = 0; n < n_; ++n) {
        const auto& set = alpha[m * n_ + n];
        if (set.empty()) continue;
        const int label = ids.at(set);
        labels_[m * n_ + n] = label;
        adj_[n].push_back({n_ + m, label});
        adj_[n_ + m].push_back({n, label});
      }
    }
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int total() const { return n_ + m_; }
  int label(int n, int m) const { return labels_[m * n_ + n]; }

  // Iterated 1-dimensional refinement to the coarsest equitable partition
  // finer than `c`. New class ids are ranks of (old class, neighbor
  // signature), so the result is invariant under relabeling.
  Coloring Refine(Coloring c) const {
    const int total = this->total();
    std::vector<std::vector<int>> sig(total);
    std::vector<int> order(total);
    for (;;) {
      for (int v = 0; v < total; ++v) {
        std::vector<std::pair<int, int>> nbr;
        nbr.reserve(adj_[v].size());
        for (const auto& [u, label] : adj_[v]) nbr.push_back({label, c.color[u]});
        std::sort(nbr.begin(), nbr.end());
        auto& out = sig[v];
        out.clear();
        out.push_back(c.color[v]);
        for (const auto& [label, col] : nbr) {
          out.push_back(label);
          out.push_back(col);
        }
      }
      for (int v = 0; v < total; ++v) order[v] = v;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return sig[a] < sig[b]; });
      std::vector<int> next(total);
      int classes = 0;
      std::uint64_t round_hash = 0;
      for (int k = 0; k < total; ++k) {
        if (k == 0 || sig[order[k]] != sig[order[k - 1]]) {
          ++classes;
          for (int x : sig[order[k]]) round_hash = Mix(round_hash, static_cast<std::uint64_t>(x));
        }
        round_hash = Mix(round_hash, static_cast<std::uint64_t>(classes));
        next[order[k]] = classes - 1;
      }
      c.trace = Mix(c.trace, round_hash);
      ++c.rounds;
      const bool stable = classes == c.classes;
      c.color = std::move(next);
      c.classes = classes;
      if (stable) return c;
    }
  }

  Coloring Initial() const {
    Coloring c;
    c.color.assign(total(), 0);
    for (int v = n_; v < total(); ++v) c.color[v] = n_ > 0 ? 1 : 0;
    c.classes = (n_ > 0 && m_ > 0) ? 2 : (total() > 0 ? 1 : 0);
    return c;
  }

  static Coloring Individualize(const Coloring& c, int v) {
    Coloring out = c;
    std::vector<int> keys(c.color.size());
    for (std::size_t u = 0; u < keys.size(); ++u) {
      keys[u] = 2 * c.color[u] + (static_cast<int>(u) == v ? 0 : 1);
    }
    std::vector<int> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t u = 0; u < keys.size(); ++u) {
      out.color[u] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), keys[u]) - sorted.begin());
    }
    out.classes = static_cast<int>(sorted.size());
    out.trace = Mix(c.trace, static_cast<std::uint64_t>(c.color[v]) + 1);
    return out;
  }

  bool IsAutomorphism(const Permutation& pn, const Permutation& pm) const {
    for (int m = 0; m < m_; ++m) {
      for (int n = 0; n < n_; ++n) {
        if (label(pn(n), pm(m)) != label(n, m)) return false;
      }
    }
    return true;
  }

 private:
  int n_;
  int m_;
  std::vector<int> labels_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

struct Level {
  Coloring coloring;
  int cell = -1;   // class individualized at this level
  int base = -1;   // node individualized on the first path
};

class Search {
 public:
  Search(const LabeledGraph& graph, const SearchLimits& limits)
      : graph_(graph), limits_(limits) {}

  AutomorphismResult Run() {
    Coloring c = graph_.Refine(graph_.Initial());
    for (;;) {
      Level level{c, -1, -1};
      if (c.classes == graph_.total()) {
        levels_.push_back(std::move(level));
        break;
      }
      level.cell = ChooseCell(c);
      for (int v = 0; v < graph_.total(); ++v) {
        if (c.color[v] == level.cell) {
          level.base = v;
          break;
        }
      }
      Coloring next = graph_.Refine(LabeledGraph::Individualize(c, level.base));
      levels_.push_back(std::move(level));
      c = std::move(next);
    }
    bool no_pending = false;
    Descend(0, levels_[0].coloring, true, no_pending);
    result_.complete = result_.order <= limits_.element_cap;
    if (!result_.complete) result_.elements.clear();
    std::sort(result_.elements.begin(), result_.elements.end());
    return std::move(result_);
  }

 private:
  // Smallest non-singleton class, input part first.
  int ChooseCell(const Coloring& c) const {
    std::vector<int> size(c.classes, 0), part(c.classes, 0);
    for (int v = 0; v < graph_.total(); ++v) {
      ++size[c.color[v]];
      part[c.color[v]] = v < graph_.n() ? 0 : 1;
    }
    int best = -1;
    for (int k = 0; k < c.classes; ++k) {
      if (size[k] < 2) continue;
      if (best < 0 || std::pair(part[k], size[k]) < std::pair(part[best], size[best])) best = k;
    }
    return best;
  }

  void Descend(std::size_t depth, const Coloring& target, bool identity_prefix,
               bool& pending_generator) {
    if (++result_.search_nodes > limits_.search_cap) {
      throw Error(ErrorCode::kSearchCapExceeded,
                  "search cap exceeded after " + std::to_string(limits_.search_cap) +
                      " search-tree nodes");
    }
    const Level& level = levels_[depth];
    if (level.cell < 0) {
      Leaf(target, pending_generator);
      return;
    }
    const Level& below = levels_[depth + 1];
    for (int w = 0; w < graph_.total(); ++w) {
      if (target.color[w] != level.cell) continue;
      Coloring next = graph_.Refine(LabeledGraph::Individualize(target, w));
      if (next.classes != below.coloring.classes || next.trace != below.coloring.trace) {
        continue;
      }
      const bool stays_identity = identity_prefix && w == level.base;
      if (identity_prefix && !stays_identity) {
        bool want = true;
        Descend(depth + 1, next, false, want);
      } else {
        Descend(depth + 1, next, stays_identity, pending_generator);
      }
    }
  }

  void Leaf(const Coloring& target, bool& pending_generator) {
    const Coloring& source = levels_.back().coloring;
    std::vector<int> node_of_class(graph_.total());
    for (int w = 0; w < graph_.total(); ++w) node_of_class[target.color[w]] = w;
    std::vector<int> pn(graph_.n()), pm(graph_.m());
    for (int v = 0; v < graph_.total(); ++v) {
      const int w = node_of_class[source.color[v]];
      if ((v < graph_.n()) != (w < graph_.n())) return;
      if (v < graph_.n()) {
        pn[v] = w;
      } else {
        pm[v - graph_.n()] = w - graph_.n();
      }
    }
    JointElement e{Permutation(std::move(pn)), Permutation(std::move(pm))};
    if (!graph_.IsAutomorphism(e.n, e.m)) return;
    ++result_.order;
    if (pending_generator) {
      result_.generators.push_back(e);
      pending_generator = false;
    }
    if (result_.order <= limits_.element_cap) {
      result_.elements.push_back(std::move(e));
    } else if (!result_.elements.empty()) {
      result_.elements.clear();
      result_.elements.shrink_to_fit();
    }
  }

  const LabeledGraph& graph_;
  const SearchLimits& limits_;
  std::vector<Level> levels_;
  AutomorphismResult result_;
};

}  // namespace

ColorProfileTable ColorRefine(const SharingStructure& s) {
  ColorProfileTable table;
  const int n = s.n_size();
  table.signatures.assign(n + s.m_size(), {});
  for (const Relation& r : s.relations()) {
    for (const Edge& e : r.edges) {
      table.signatures[e.n].push_back({r.color_id, 0});
      table.signatures[n + e.m].push_back({r.color_id, 1});
    }
  }
  for (auto& sig : table.signatures) std::sort(sig.begin(), sig.end());
  const LabeledGraph graph(s);
  const Coloring c = graph.Refine(graph.Initial());
  table.n_class.assign(c.color.begin(), c.color.begin() + n);
  table.m_class.assign(c.color.begin() + n, c.color.end());
  table.class_count = c.classes;
  table.rounds = c.rounds;
  return table;
}

AutomorphismResult EnumerateAutomorphisms(const SharingStructure& s,
                                          const JointAction* reference,
                                          const SearchLimits& limits) {
  const std::size_t total = static_cast<std::size_t>(s.n_size()) + s.m_size();
  if (total > limits.node_budget) {
    throw Error(ErrorCode::kNodeBudgetExceeded,
                "node budget exceeded: structure has " + std::to_string(total) +
                    " nodes, budget is " + std::to_string(limits.node_budget));
  }
  const LabeledGraph graph(s);
  AutomorphismResult result = Search(graph, limits).Run();
  if (reference != nullptr) {
    const bool contained = std::all_of(
        reference->elements().begin(), reference->elements().end(),
        [&](const JointElement& e) { return PreservesColors(s, e.n, e.m); });
    if (!contained) {
      result.verdict = Verdict::kIncomparable;
    } else if (result.order == reference->order()) {
      result.verdict = Verdict::kEqual;
    } else {
      result.verdict = Verdict::kProperSupergroup;
    }
  }
  return result;
}

Certificate CertifyUnique(const SharingStructure& s, const JointAction& joint,
                          const SearchLimits& limits) {
  for (const JointElement& e : joint.elements()) {
    if (!PreservesColors(s, e.n, e.m)) {
      throw Error(ErrorCode::kDesignInvariant,
                  "joint element (" + ToCycleString(e.n) + ", " + ToCycleString(e.m) +
                      ") does not preserve the structure's colors");
    }
  }
  const AutomorphismResult aut = EnumerateAutomorphisms(s, &joint, limits);
  Certificate cert;
  cert.aut_order = aut.order;
  cert.joint_order = joint.order();
  if (aut.order == joint.order()) return cert;
  cert.verdict = Uniqueness::kSupergroup;
  const auto& pool = aut.complete ? aut.elements : aut.generators;
  for (const JointElement& e : pool) {
    if (!joint.Contains(e)) {
      cert.witness = e;
      break;
    }
  }
  return cert;
}

}  // namespace eqshare
