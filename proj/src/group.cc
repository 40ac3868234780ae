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

#include "eqshare/group.h"

#include <algorithm>
#include <string>

#include "eqshare/error.h"

namespace eqshare {

std::optional<ElementId> PermutationGroup::IndexOf(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementId PermutationGroup::Multiply(ElementId a, ElementId b) const {
  return index_.at(Compose(elements_[a], elements_[b]));
}

ElementId PermutationGroup::InverseOf(ElementId a) const {
  return index_.at(Inverse(elements_[a]));
}

PermutationGroup CloseGenerators(int degree, std::span<const Permutation> gens,
                                 std::size_t cap) {
  if (cap == 0) throw Error(ErrorCode::kInvalidArgument, "order cap must be positive");
  for (const Permutation& g : gens) {
    if (g.degree() != degree) {
      throw Error(ErrorCode::kDegreeMismatch,
                  "generator " + ToCycleString(g) + " has degree " +
                      std::to_string(g.degree()) + ", expected " +
                      std::to_string(degree));
    }
  }
  PermutationGroup group;
  group.degree_ = degree;
  auto add = [&](Permutation p) {
    group.index_.emplace(p, group.elements_.size());
    group.elements_.push_back(std::move(p));
    if (group.elements_.size() > cap) {
      throw Error(ErrorCode::kOrderCapExceeded,
                  "order cap exceeded: closure has more than " +
                      std::to_string(cap) + " elements (raise the cap)");
    }
  };
  add(Permutation::Identity(degree));
  std::size_t layer_begin = 0;
  while (layer_begin < group.elements_.size()) {
    const std::size_t layer_end = group.elements_.size();
    std::set<Permutation> next;
    for (std::size_t x = layer_begin; x < layer_end; ++x) {
      for (const Permutation& g : gens) {
        Permutation y = Compose(g, group.elements_[x]);
        if (!group.index_.contains(y)) next.insert(std::move(y));
      }
    }
    for (const Permutation& p : next) add(p);
    layer_begin = layer_end;
  }
  for (const Permutation& g : gens) group.generator_ids_.push_back(group.index_.at(g));
  return group;
}

namespace {

void RequirePositive(int value, const char* what) {
  if (value < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must be at least 1, got " + std::to_string(value));
  }
}

// Drops identities and repeats so closures and word names stay meaningful.
GeneratorSet Tidy(int degree, std::vector<Permutation> gens) {
  GeneratorSet out{degree, {}};
  for (Permutation& g : gens) {
    if (g.IsIdentity()) continue;
    if (std::find(out.generators.begin(), out.generators.end(), g) != out.generators.end())
      continue;
    out.generators.push_back(std::move(g));
  }
  return out;
}

Permutation Shift(int n) {
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = (i + 1) % n;
  return Permutation(std::move(images));
}

}  // namespace

GeneratorSet CyclicGenerators(int n) {
  RequirePositive(n, "cyclic order");
  return Tidy(n, {Shift(n)});
}

GeneratorSet DihedralGenerators(int n) {
  RequirePositive(n, "dihedral degree");
  std::vector<int> flip(n);
  for (int i = 0; i < n; ++i) flip[i] = n - 1 - i;
  return Tidy(n, {Shift(n), Permutation(std::move(flip))});
}

GeneratorSet SymmetricGenerators(int n) {
  RequirePositive(n, "symmetric degree");
  std::vector<int> swap = Permutation::Identity(n).images();
  if (n >= 2) std::swap(swap[0], swap[1]);
  return Tidy(n, {Permutation(std::move(swap)), Shift(n)});
}

GeneratorSet WreathGenerators(int d, int big_d) {
  RequirePositive(d, "wreath block size");
  RequirePositive(big_d, "wreath block count");
  const int degree = d * big_d;
  std::vector<Permutation> gens;
  for (const Permutation& inner : SymmetricGenerators(d).generators) {
    std::vector<int> images = Permutation::Identity(degree).images();
    for (int i = 0; i < d; ++i) images[i] = inner(i);
    gens.emplace_back(std::move(images));
  }
  for (const Permutation& outer : SymmetricGenerators(big_d).generators) {
    std::vector<int> images(degree);
    for (int b = 0; b < big_d; ++b) {
      for (int i = 0; i < d; ++i) images[b * d + i] = outer(b) * d + i;
    }
    gens.emplace_back(std::move(images));
  }
  return Tidy(degree, std::move(gens));
}

GeneratorSet DirectProductGenerators(std::span<const GeneratorSet> factors) {
  if (factors.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "direct product needs at least one factor");
  }
  int degree = 0;
  for (const GeneratorSet& f : factors) degree += f.degree;
  std::vector<Permutation> gens;
  int offset = 0;
  for (const GeneratorSet& f : factors) {
    for (const Permutation& g : f.generators) {
      std::vector<int> images = Permutation::Identity(degree).images();
      for (int i = 0; i < f.degree; ++i) images[offset + i] = offset + g(i);
      gens.emplace_back(std::move(images));
    }
    offset += f.degree;
  }
  return Tidy(degree, std::move(gens));
}

GeneratorSet NamedGroup(const NamedGroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::kCyclic: return CyclicGenerators(spec.n);
    case GroupKind::kDihedral: return DihedralGenerators(spec.n);
    case GroupKind::kSymmetric: return SymmetricGenerators(spec.n);
    case GroupKind::kWreath: return WreathGenerators(spec.d, spec.blocks);
    case GroupKind::kDirectProduct: {
      std::vector<GeneratorSet> factors;
      for (const NamedGroupSpec& f : spec.factors) factors.push_back(NamedGroup(f));
      return DirectProductGenerators(factors);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown group kind");
}

bool IsSymmetricGenset(const PermutationGroup& group, const std::set<ElementId>& a) {
  for (ElementId x : a) {
    if (!a.contains(group.InverseOf(x))) return false;
  }
  return true;
}

std::set<ElementId> SymmetrizeGenset(const PermutationGroup& group,
                                     const std::set<ElementId>& a) {
  std::vector<Permutation> gens;
  for (ElementId x : a) {
    if (x >= group.order()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "element id " + std::to_string(x) + " is not in the group");
    }
    gens.push_back(group.element(x));
  }
  const PermutationGroup sub = CloseGenerators(group.degree(), gens, group.order());
  if (sub.order() != group.order()) {
    throw Error(ErrorCode::kNotGenerating,
                "A does not generate G: <A> has order " + std::to_string(sub.order()) +
                    ", G has order " + std::to_string(group.order()));
  }
  std::set<ElementId> out = a;
  for (ElementId x : a) out.insert(group.InverseOf(x));
  return out;
}

}  // namespace eqshare
