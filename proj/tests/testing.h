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

// Fixtures and brute-force oracles shared by the tests. The oracles avoid the
// library's search code entirely: they enumerate permutations directly.

#ifndef EQSHARE_TESTS_TESTING_H_
#define EQSHARE_TESTS_TESTING_H_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eqshare/action.h"
#include "eqshare/designs.h"
#include "eqshare/group.h"
#include "eqshare/permutation.h"

namespace eqshare::testing {

inline GroupPtr Cyclic(int n) {
  const GeneratorSet gens = CyclicGenerators(n);
  return MakeGroup(CloseGenerators(gens.degree, gens.generators));
}

inline GroupPtr Named(const NamedGroupSpec& spec, std::size_t cap = kDefaultOrderCap) {
  const GeneratorSet gens = NamedGroup(spec);
  return MakeGroup(CloseGenerators(gens.degree, gens.generators, cap));
}

inline JointAction Diagonal(const GroupPtr& g) {
  return MakeJointAction(NaturalAction(g), NaturalAction(g));
}

inline Permutation Shift(int n, int k) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = ((i + k) % n + n) % n;
  return Permutation(img);
}

// Element ids of the shifts by `offsets` in a cyclic group on its natural points.
inline std::set<ElementId> Shifts(const PermutationGroup& g, std::initializer_list<int> offsets) {
  std::set<ElementId> out;
  for (int k : offsets) out.insert(*g.IndexOf(Shift(g.degree(), k)));
  return out;
}

// Z6 acting on N = {0,1,2} by n -> n + g mod 3 and on M = {0..5} by
// m -> m - g mod 6.
inline JointAction ReverseConv() {
  GroupPtr g = Cyclic(6);
  const Permutation n_gen = Shift(3, 1);
  const Permutation m_gen = Shift(6, -1);
  return MakeJointAction(BuildAction(g, {&n_gen, 1}, 3), BuildAction(g, {&m_gen, 1}, 6));
}
inline std::set<ElementId> ReverseConvGenset(const JointAction& j) {
  return Shifts(j.group(), {1, 5});
}

// Z4 rotating two rings of four points on both sides.
inline JointAction RotationZ4() {
  GroupPtr g = Cyclic(4);
  const Permutation gen = ParseCycles("(0 1 2 3)(4 5 6 7)", 8);
  return MakeJointAction(BuildAction(g, {&gen, 1}, 8), BuildAction(g, {&gen, 1}, 8));
}

// Z2 mirroring four inputs, outputs identified with the group.
inline JointAction Mirror(int n = 4) {
  GroupPtr g = Cyclic(2);
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = n - 1 - i;
  const Permutation gen(img);
  return MakeJointAction(BuildAction(g, {&gen, 1}, n), RegularAction(g));
}

// Z_n on its points, outputs identified with the group.
inline JointAction CyclicConv(int n) {
  GroupPtr g = Cyclic(n);
  return MakeJointAction(NaturalAction(g), RegularAction(g));
}

inline std::set<ElementId> AllGenerators(const JointAction& j) {
  std::set<ElementId> a(j.group().generator_ids().begin(), j.group().generator_ids().end());
  return SymmetrizeGenset(j.group(), a);
}

// All permutations of {0..n-1} in lexicographic order.
inline std::vector<Permutation> AllPermutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// Every pair (pn, pm) with alpha(pn n, pm m) = alpha(n, m) on all cells,
// sorted.
inline std::vector<JointElement> BruteForceAut(const SharingStructure& s) {
  const int n = s.n_size();
  const int m = s.m_size();
  const auto alpha = s.CellColors();
  const auto pns = AllPermutations(n);
  const auto pms = AllPermutations(m);
  std::vector<JointElement> out;
  for (const Permutation& pn : pns) {
    for (const Permutation& pm : pms) {
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) {
        for (int i = 0; i < n && ok; ++i) {
          ok = alpha[pm(j) * n + pn(i)] == alpha[j * n + i];
        }
      }
      if (ok) out.push_back({pn, pm});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Relabelings p with B[p(i)][p(j)] = B[i][j].
inline std::vector<Permutation> BruteForceGraphAut(const std::vector<std::vector<int>>& b) {
  const int n = static_cast<int>(b.size());
  std::vector<Permutation> out;
  for (const Permutation& p : AllPermutations(n)) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) ok = b[p(i)][p(j)] == b[i][j];
    }
    if (ok) out.push_back(p);
  }
  return out;
}

// y[m] = sum_k w[k] x[(m + k) mod n].
inline std::vector<double> CircularCrossCorrelation(const std::vector<double>& w,
                                                    const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> y(n, 0.0);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) y[m] += w[k] * x[(m + k) % n];
  }
  return y;
}

inline std::vector<std::vector<int>> RandomDigraph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b[i][j] = (i != j && edge(rng)) ? 1 : 0;
  }
  return b;
}

inline Permutation RandomPermutation(std::mt19937_64& rng, int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

}  // namespace eqshare::testing

#endif  // EQSHARE_TESTS_TESTING_H_
