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

#ifndef EQSHARE_PERMUTATION_H_
#define EQSHARE_PERMUTATION_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eqshare {

// A bijection of {0, ..., n-1} stored in image form: images()[i] = p(i).
//
// Composition is "apply the right operand first": Compose(p, q)(i) = p(q(i)).
// This is the only convention in the library; the permutation matrix of p has
// its 1 in row p(j) of column j, so that P(Compose(p, q)) = P(p) * P(q).
class Permutation {
 public:
  Permutation() = default;
  // Throws Error(kInvalidArgument) unless `images` is a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation Identity(int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }
  bool IsIdentity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<int> images_;
};

Permutation Compose(const Permutation& p, const Permutation& q);
Permutation Inverse(const Permutation& p);

// Vector action: result[p(i)] = x[i].
template <typename T>
std::vector<T> Apply(const Permutation& p, std::span<const T> x) {
  std::vector<T> result(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) result[p(static_cast<int>(i))] = x[i];
  return result;
}

// Disjoint-cycle form, e.g. "(0 1 2)(4 5)". Fixed points are omitted and the
// identity prints as "()". `base` shifts every printed point (1 for display).
std::string ToCycleString(const Permutation& p, int base = 0);

// Parses a product of cycles over `degree` points. Cycles may overlap; they
// are multiplied right to left, as in ordinary cycle arithmetic. Whitespace or
// commas separate points.
Permutation ParseCycles(std::string_view text, int degree, int base = 0);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

}  // namespace eqshare

#endif  // EQSHARE_PERMUTATION_H_
