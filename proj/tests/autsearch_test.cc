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

#include <random>
#include <set>
#include <string>
#include <vector>

#include "eqshare/autsearch.h"
#include "eqshare/designs.h"
#include "eqshare/error.h"
#include "eqshare/layer.h"
#include "gtest/gtest.h"
#include "testing.h"

namespace eqshare {
namespace {

using testing::Named;

struct Case {
  std::string name;
  SharingStructure s;
};

SharingStructure RandomStructure(std::mt19937_64& rng, int n, int m, int colors, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<Relation> rels;
  for (int c = 1; c <= colors; ++c) {
    Relation r{c, {}, provenance::Explicit{"random"}};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        if (edge(rng)) r.edges.push_back({i, j});
      }
    }
    rels.push_back(std::move(r));
  }
  return SharingStructure(n, m, std::move(rels));
}

// Every structure here has n_size + m_size <= 10.
std::vector<Case> SmallCorpus() {
  std::vector<Case> out;
  const JointAction rev = testing::ReverseConv();
  out.push_back({"reverse_conv", SparseDesign(rev, testing::ReverseConvGenset(rev))});
  const JointAction mirror = testing::Mirror(4);
  const SharingStructure ms = SparseDesign(mirror, testing::AllGenerators(mirror));
  out.push_back({"mirror", ms});
  out.push_back({"mirror_tied", TieAcrossOrbits(ms)});
  out.push_back({"mirror_k2", ExpandChannels(ms, {2, 1})});
  for (int n = 3; n <= 5; ++n) {
    out.push_back({"sym_dense_" + std::to_string(n),
                   DenseDesign(testing::Diagonal(Named({GroupKind::kSymmetric, n})))});
  }
  for (int n : {4, 5}) {
    const JointAction d = testing::Diagonal(Named({GroupKind::kDihedral, n}));
    out.push_back({"dihedral_dense_" + std::to_string(n), DenseDesign(d)});
    out.push_back({"dihedral_sparse_" + std::to_string(n), SparseDesign(d, testing::AllGenerators(d))});
  }
  const JointAction z5 = testing::CyclicConv(5);
  out.push_back({"cyclic_conv_5", SparseDesign(z5, testing::Shifts(z5.group(), {1, 4}))});
  out.push_back({"trivial_2x2", DenseDesign(testing::Diagonal(MakeGroup(CloseGenerators(2, {}))))});
  out.push_back({"diagonal_only_3", WithIdentityRelation(SharingStructure(3, 3, {}))});
  out.push_back({"edgeless_2x3", SharingStructure(2, 3, {})});
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 12; ++t) {
    const int n = 2 + t % 4;
    out.push_back({"graph_" + std::to_string(t),
                   GraphConvStructure(AdjacencyMatrix(testing::RandomDigraph(rng, n, 0.4)))});
    out.push_back({"random_" + std::to_string(t),
                   RandomStructure(rng, 2 + t % 3, 2 + (t / 3) % 4, 1 + t % 3, 0.35)});
  }
  return out;
}

std::vector<JointElement> Sorted(std::vector<JointElement> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Order of the group generated by pairs, closed on the disjoint union N + M.
std::size_t GeneratedOrder(const std::vector<JointElement>& gens, int n, int m) {
  std::vector<Permutation> joined;
  for (const JointElement& g : gens) {
    std::vector<int> img(n + m);
    for (int i = 0; i < n; ++i) img[i] = g.n(i);
    for (int j = 0; j < m; ++j) img[n + j] = n + g.m(j);
    joined.emplace_back(img);
  }
  return CloseGenerators(n + m, joined, 1'000'000).order();
}

TEST(ColorRefineTest, Examples) {
  const JointAction rev = testing::ReverseConv();
  const ColorProfileTable rc = ColorRefine(SparseDesign(rev, testing::ReverseConvGenset(rev)));
  EXPECT_EQ(std::set<int>(rc.n_class.begin(), rc.n_class.end()).size(), 1u);
  EXPECT_EQ(std::set<int>(rc.m_class.begin(), rc.m_class.end()).size(), 1u);

  const JointAction rot = testing::RotationZ4();
  const ColorProfileTable rt = ColorRefine(SparseDesign(rot, testing::Shifts(rot.group(), {1, 3})));
  EXPECT_EQ(std::set<int>(rt.n_class.begin(), rt.n_class.end()).size(), 2u);
  EXPECT_EQ(std::set<int>(rt.m_class.begin(), rt.m_class.end()).size(), 2u);
  EXPECT_NE(rt.n_class[0], rt.n_class[4]);

  const SharingStructure lone(3, 3,
                              {{1, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {0, 2}, {2, 0}, {1, 2}, {2, 1}},
                                provenance::Explicit{}},
                               {2, {{1, 2}}, provenance::Explicit{}}});
  const ColorProfileTable lt = ColorRefine(lone);
  EXPECT_EQ(std::count(lt.n_class.begin(), lt.n_class.end(), lt.n_class[1]), 1);
  EXPECT_EQ(std::count(lt.m_class.begin(), lt.m_class.end(), lt.m_class[2]), 1);
}

TEST(ColorRefineTest, ClassesIgnoreNodeNumbering) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const SharingStructure s = RandomStructure(rng, 4, 3, 2, 0.4);
    const Permutation pn = testing::RandomPermutation(rng, 4);
    const Permutation pm = testing::RandomPermutation(rng, 3);
    std::vector<Relation> moved;
    for (const Relation& r : s.relations()) {
      Relation x{r.color_id, {}, r.provenance};
      for (const Edge& e : r.edges) x.edges.push_back({pn(e.n), pm(e.m)});
      moved.push_back(std::move(x));
    }
    const ColorProfileTable a = ColorRefine(s);
    const ColorProfileTable b = ColorRefine(SharingStructure(4, 3, moved));
    for (int i = 0; i < 4; ++i) EXPECT_EQ(a.n_class[i], b.n_class[pn(i)]);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a.m_class[j], b.m_class[pm(j)]);
  }
}

TEST(EnumerateTest, SymmetricDense) {
  const JointAction j = testing::Diagonal(Named({GroupKind::kSymmetric, 4}));
  const AutomorphismResult r = EnumerateAutomorphisms(DenseDesign(j), &j);
  EXPECT_EQ(r.order, 24u);
  ASSERT_TRUE(r.complete);
  for (const JointElement& e : r.elements) EXPECT_EQ(e.n, e.m);
  EXPECT_EQ(r.verdict, Verdict::kEqual);
}

TEST(EnumerateTest, ReverseConvolutionHasTwinOutputs) {
  // Output rows m and m + 3 carry identical colors, so they can be swapped
  // independently: 3 shifts times 2^3 swaps.
  const JointAction j = testing::ReverseConv();
  const SharingStructure s = SparseDesign(j, testing::ReverseConvGenset(j));
  const AutomorphismResult r = EnumerateAutomorphisms(s, &j);
  EXPECT_EQ(r.order, 24u);
  EXPECT_EQ(r.verdict, Verdict::kProperSupergroup);
  EXPECT_TRUE(r.Contains({Permutation::Identity(3), ParseCycles("(2 5)", 6)}));
  for (const JointElement& e : j.elements()) EXPECT_TRUE(r.Contains(e));
}

TEST(EnumerateTest, RotationReflectionPreservesSparseColors) {
  const JointAction j = testing::RotationZ4();
  const SharingStructure s = SparseDesign(j, testing::Shifts(j.group(), {1, 3}));
  const Permutation pn = ParseCycles("(0 2)(4 6)", 8);
  const Permutation pm = ParseCycles("(1 3)(5 7)", 8);
  EXPECT_TRUE(PreservesColors(s, pn, pm));
  EXPECT_FALSE(j.Contains({pn, pm}));
  const AutomorphismResult r = EnumerateAutomorphisms(s, &j);
  EXPECT_EQ(r.order, 8u);
  EXPECT_TRUE(r.Contains({pn, pm}));
}

TEST(EnumerateTest, TiedMirror) {
  const JointAction j = testing::Mirror(4);
  const SharingStructure s = TieAcrossOrbits(SparseDesign(j, testing::AllGenerators(j)));
  const AutomorphismResult r = EnumerateAutomorphisms(s, &j);
  // Two disjoint stars K_{1,2}: each star's leaves swap, and the stars swap.
  EXPECT_EQ(r.order, 8u);
  EXPECT_EQ(r.verdict, Verdict::kProperSupergroup);
  const JointElement orbit_swap{ParseCycles("(0 1)(2 3)", 4), Permutation::Identity(2)};
  EXPECT_TRUE(r.Contains(orbit_swap));
  EXPECT_FALSE(j.Contains(orbit_swap));
  EXPECT_EQ(Sorted(r.elements), testing::BruteForceAut(s));
}

TEST(EnumerateTest, DigraphModeForcesEqualPermutations) {
  const AutomorphismResult r = EnumerateAutomorphisms(WithIdentityRelation(SharingStructure(3, 3, {})));
  EXPECT_EQ(r.order, 6u);
  for (const JointElement& e : r.elements) EXPECT_EQ(e.n, e.m);
}

TEST(EnumerateTest, GraphConvolution) {
  const SharingStructure cycle = GraphConvStructure(AdjacencyMatrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  const AutomorphismResult a = EnumerateAutomorphisms(cycle);
  EXPECT_EQ(a.order, 3u);
  const SharingStructure reversed =
      GraphConvStructure(AdjacencyMatrix({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
  EXPECT_NE(cycle, reversed);
  EXPECT_EQ(EnumerateAutomorphisms(reversed).elements, a.elements);
  const SharingStructure empty = GraphConvStructure(AdjacencyMatrix({{0, 0, 0, 0}, {0, 0, 0, 0},
                                                                     {0, 0, 0, 0}, {0, 0, 0, 0}}));
  EXPECT_EQ(EnumerateAutomorphisms(empty).order, 24u);
}

TEST(EnumerateTest, IncomparableReference) {
  // A structure with aut = {identity} vs a reference that does not preserve it.
  const SharingStructure s(2, 1, {{1, {{0, 0}}, provenance::Explicit{}}});
  GroupPtr z2 = testing::Cyclic(2);
  const JointAction j = MakeJointAction(NaturalAction(z2), TrivialAction(z2, 1));
  EXPECT_EQ(EnumerateAutomorphisms(s, &j).verdict, Verdict::kIncomparable);
}

TEST(EnumerateTest, BeyondElementCap) {
  SearchLimits limits;
  limits.element_cap = 100;
  const SharingStructure s(5, 5, {});
  const AutomorphismResult r = EnumerateAutomorphisms(s, nullptr, limits);
  EXPECT_EQ(r.order, 14400u);
  EXPECT_TRUE(r.elements.empty());
  EXPECT_EQ(GeneratedOrder(r.generators, 5, 5), 14400u);
}

TEST(EnumerateTest, Limits) {
  SearchLimits budget;
  budget.node_budget = 8;
  try {
    EnumerateAutomorphisms(SharingStructure(5, 5, {}), nullptr, budget);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNodeBudgetExceeded);
  }
  SearchLimits tree;
  tree.search_cap = 10;
  try {
    EnumerateAutomorphisms(SharingStructure(5, 5, {}), nullptr, tree);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSearchCapExceeded);
  }
}

TEST(CertifyTest, Verdicts) {
  const JointAction s4 = testing::Diagonal(Named({GroupKind::kSymmetric, 4}));
  const Certificate dense = CertifyUnique(DenseDesign(s4), s4);
  EXPECT_EQ(dense.verdict, Uniqueness::kUnique);
  EXPECT_EQ(dense.aut_order, 24u);
  EXPECT_FALSE(dense.witness.has_value());

  const JointAction mirror = testing::Mirror(4);
  const SharingStructure untied = SparseDesign(mirror, testing::AllGenerators(mirror));
  EXPECT_EQ(CertifyUnique(untied, mirror).verdict, Uniqueness::kUnique);
  const Certificate tied = CertifyUnique(TieAcrossOrbits(untied), mirror);
  EXPECT_EQ(tied.verdict, Uniqueness::kSupergroup);
  ASSERT_TRUE(tied.witness.has_value());
  EXPECT_FALSE(mirror.Contains(*tied.witness));
  EXPECT_TRUE(PreservesColors(TieAcrossOrbits(untied), tied.witness->n, tied.witness->m));
}

TEST(CertifyTest, BrokenDesignInvariant) {
  const JointAction mirror = testing::Mirror(4);
  const SharingStructure s = SparseDesign(mirror, testing::AllGenerators(mirror));
  const JointAction wrong =
      MakeJointAction(mirror.n_action(), TrivialAction(mirror.n_action().group_ptr(), 2));
  try {
    CertifyUnique(s, wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDesignInvariant);
  }
}

TEST(AutPropertyTest, MatchesBruteForce) {
  for (const Case& c : SmallCorpus()) {
    const AutomorphismResult r = EnumerateAutomorphisms(c.s);
    ASSERT_TRUE(r.complete) << c.name;
    EXPECT_EQ(Sorted(r.elements), testing::BruteForceAut(c.s)) << c.name;
    EXPECT_EQ(r.order, r.elements.size()) << c.name;
  }
}

TEST(AutPropertyTest, SoundAndContainsIdentity) {
  for (const Case& c : SmallCorpus()) {
    const AutomorphismResult r = EnumerateAutomorphisms(c.s);
    EXPECT_TRUE(r.Contains({Permutation::Identity(c.s.n_size()), Permutation::Identity(c.s.m_size())}));
    for (const JointElement& e : r.elements) EXPECT_TRUE(PreservesColors(c.s, e.n, e.m)) << c.name;
    for (const JointElement& e : r.generators) EXPECT_TRUE(r.Contains(e)) << c.name;
    EXPECT_EQ(GeneratedOrder(r.generators, c.s.n_size(), c.s.m_size()), r.order) << c.name;
  }
}

TEST(AutPropertyTest, RefinementNeverSeparatesAutomorphicNodes) {
  for (const Case& c : SmallCorpus()) {
    const ColorProfileTable t = ColorRefine(c.s);
    for (const JointElement& e : EnumerateAutomorphisms(c.s).elements) {
      for (int i = 0; i < c.s.n_size(); ++i) ASSERT_EQ(t.n_class[i], t.n_class[e.n(i)]) << c.name;
      for (int j = 0; j < c.s.m_size(); ++j) ASSERT_EQ(t.m_class[j], t.m_class[e.m(j)]) << c.name;
    }
  }
}

TEST(AutPropertyTest, Deterministic) {
  for (const Case& c : SmallCorpus()) {
    const AutomorphismResult a = EnumerateAutomorphisms(c.s);
    const AutomorphismResult b = EnumerateAutomorphisms(c.s);
    EXPECT_EQ(a.elements, b.elements);
    EXPECT_EQ(a.generators, b.generators);
    EXPECT_EQ(a.search_nodes, b.search_nodes);
  }
}

TEST(AutPropertyTest, DesignsContainTheirJointGroup) {
  std::vector<JointAction> joints = {testing::ReverseConv(), testing::RotationZ4(),
                                     testing::Mirror(4), testing::Mirror(6), testing::CyclicConv(6)};
  joints.push_back(testing::Diagonal(Named({GroupKind::kDihedral, 5})));
  NamedGroupSpec wreath;
  wreath.kind = GroupKind::kWreath;
  wreath.d = 3;
  wreath.blocks = 2;
  joints.push_back(testing::Diagonal(Named(wreath)));
  for (const JointAction& j : joints) {
    for (const SharingStructure& s : {DenseDesign(j), SparseDesign(j, testing::AllGenerators(j))}) {
      const AutomorphismResult r = EnumerateAutomorphisms(s, &j);
      for (const JointElement& e : j.elements()) EXPECT_TRUE(r.Contains(e));
      EXPECT_NE(r.verdict, Verdict::kIncomparable);
    }
  }
}

// Exact commutation with distinct-prime weights holds for a pair iff the
// pair preserves the colors.
TEST(AutPropertyTest, CommutationIffAutomorphism) {
  for (const Case& c : SmallCorpus()) {
    if (c.s.color_count() == 0) continue;
    const ColorMatrix cm = MergeColors(c.s);
    const IntMatrix w = MaterializeExact(cm, FirstPrimes(cm.base_color_count()));
    // Distinct color sets must also give distinct weights for the iff to hold.
    std::set<std::int64_t> weights;
    for (const auto& set : cm.merged_to_base()) {
      std::int64_t sum = 0;
      for (int b : set) sum += FirstPrimes(cm.base_color_count())[b - 1];
      weights.insert(sum);
    }
    if (weights.size() != static_cast<std::size_t>(cm.merged_count()) || weights.count(0)) continue;
    const AutomorphismResult r = EnumerateAutomorphisms(c.s);
    for (const Permutation& pn : testing::AllPermutations(c.s.n_size())) {
      for (const Permutation& pm : testing::AllPermutations(c.s.m_size())) {
        ASSERT_EQ(Commutes(w, pn, pm), r.Contains({pn, pm})) << c.name;
      }
    }
  }
}

}  // namespace
}  // namespace eqshare
