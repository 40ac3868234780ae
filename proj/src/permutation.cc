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

#include "eqshare/permutation.h"

#include <cctype>
#include <sstream>

#include "eqshare/error.h"

namespace eqshare {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDegreeMismatch: return "degree mismatch";
    case ErrorCode::kOrderCapExceeded: return "order cap exceeded";
    case ErrorCode::kInconsistentAction: return "inconsistent action";
    case ErrorCode::kGroupMismatch: return "reference-group mismatch";
    case ErrorCode::kNotGenerating: return "A does not generate G";
    case ErrorCode::kAsymmetricGenset: return "A is not closed under inverse";
    case ErrorCode::kSizeMismatch: return "size mismatch";
    case ErrorCode::kActionMismatch: return "action mismatch";
    case ErrorCode::kNotSubgroup: return "not a subgroup";
    case ErrorCode::kNodeBudgetExceeded: return "node budget exceeded";
    case ErrorCode::kSearchCapExceeded: return "search cap exceeded";
    case ErrorCode::kDesignInvariant: return "design invariant violated";
    case ErrorCode::kSpecSyntax: return "syntax error";
    case ErrorCode::kSpecInvalid: return "invalid spec";
  }
  return "unknown";
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[v]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "image sequence is not a permutation");
    }
    seen[v] = true;
  }
}

Permutation Permutation::Identity(int degree) {
  std::vector<int> images(degree);
  for (int i = 0; i < degree; ++i) images[i] = i;
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

bool Permutation::IsIdentity() const {
  for (int i = 0; i < degree(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw Error(ErrorCode::kDegreeMismatch,
                "cannot compose permutations of degree " +
                    std::to_string(p.degree()) + " and " +
                    std::to_string(q.degree()));
  }
  std::vector<int> images(p.degree());
  for (int i = 0; i < p.degree(); ++i) images[i] = p(q(i));
  return Permutation(std::move(images));
}

Permutation Inverse(const Permutation& p) {
  std::vector<int> images(p.degree());
  for (int i = 0; i < p.degree(); ++i) images[p(i)] = i;
  return Permutation(std::move(images));
}

std::string ToCycleString(const Permutation& p, int base) {
  std::ostringstream out;
  std::vector<bool> done(p.degree(), false);
  bool any = false;
  for (int start = 0; start < p.degree(); ++start) {
    if (done[start] || p(start) == start) continue;
    any = true;
    out << '(';
    int i = start;
    bool first = true;
    while (!done[i]) {
      done[i] = true;
      if (!first) out << ' ';
      out << i + base;
      first = false;
      i = p(i);
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Permutation ParseCycles(std::string_view text, int degree, int base) {
  auto fail = [&](std::size_t pos, const std::string& what) -> Error {
    return Error(ErrorCode::kInvalidArgument,
                 "cycle notation \"" + std::string(text) + "\" at offset " +
                     std::to_string(pos) + ": " + what);
  };
  if (degree < 0) throw fail(0, "negative degree");
  Permutation result = Permutation::Identity(degree);
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw fail(i, "expected '('");
    ++i;
    std::vector<int> cycle;
    std::vector<bool> in_cycle(degree, false);
    for (;;) {
      while (i < text.size() &&
             (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
        ++i;
      if (i >= text.size()) throw fail(i, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw fail(i, "expected a point");
      std::size_t start = i;
      long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > 1'000'000'000) throw fail(start, "point out of range");
        ++i;
      }
      const long point = value - base;
      if (point < 0 || point >= degree) throw fail(start, "point out of range");
      if (in_cycle[point]) throw fail(start, "point repeated within a cycle");
      in_cycle[point] = true;
      cycle.push_back(static_cast<int>(point));
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    std::vector<int> images = Permutation::Identity(degree).images();
    const auto& c = *it;
    for (std::size_t k = 0; k < c.size(); ++k) images[c[k]] = c[(k + 1) % c.size()];
    result = Compose(Permutation(std::move(images)), result);
  }
  return result;
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.images()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace eqshare
