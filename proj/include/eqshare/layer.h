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

#ifndef EQSHARE_LAYER_H_
#define EQSHARE_LAYER_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eqshare/action.h"
#include "eqshare/designs.h"

namespace eqshare {

using WeightMatrix = Eigen::MatrixXd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Strictly monotonic elementwise maps only.
class Nonlinearity {
 public:
  enum class Kind { kIdentity, kLeaky };

  static Nonlinearity Identity() { return Nonlinearity(Kind::kIdentity, 1.0); }
  // Throws Error(kInvalidArgument) unless 0 < slope < 1.
  static Nonlinearity Leaky(double slope = 0.5);

  Kind kind() const { return kind_; }
  double slope() const { return slope_; }
  double operator()(double v) const {
    return (kind_ == Kind::kLeaky && v < 0) ? slope_ * v : v;
  }
  Eigen::VectorXd Apply(const Eigen::VectorXd& v) const;

 private:
  Nonlinearity(Kind kind, double slope) : kind_(kind), slope_(slope) {}
  Kind kind_;
  double slope_;
};

class TiedLayer {
 public:
  // Throws Error(kSizeMismatch) unless theta has one entry per base color.
  TiedLayer(ColorMatrix colors, std::vector<double> theta,
            Nonlinearity sigma = Nonlinearity::Identity());

  const ColorMatrix& colors() const { return colors_; }
  const std::vector<double>& theta() const { return theta_; }
  const Nonlinearity& sigma() const { return sigma_; }
  int n_size() const { return colors_.n_size(); }
  int m_size() const { return colors_.m_size(); }

  bool HasDistinctTheta() const;
  void RequireDistinctTheta() const;
  WeightMatrix Weights() const;

 private:
  ColorMatrix colors_;
  std::vector<double> theta_;
  Nonlinearity sigma_;
};

// W[m, n] = sum of theta over the base colors of the cell; empty cells are 0.
WeightMatrix Materialize(const ColorMatrix& cm, std::span<const double> theta);
IntMatrix MaterializeExact(const ColorMatrix& cm, std::span<const std::int64_t> theta);

// 2, 3, 5, ... (count of them).
std::vector<std::int64_t> FirstPrimes(int count);

// sigma(W x).
Eigen::VectorXd Forward(const TiedLayer& layer, const Eigen::VectorXd& x);

// Entry 1 at (p(j), j).
IntMatrix PermutationMatrix(const Permutation& p);

// P_M W == W P_N, checked entrywise as W[pm(m), pn(n)] == W[m, n].
bool Commutes(const IntMatrix& w, const Permutation& pn, const Permutation& pm);
// The same relation evaluated with explicit permutation-matrix products.
bool CommutesMatrixForm(const IntMatrix& w, const Permutation& pn,
                        const Permutation& pm);

struct EquivarianceOptions {
  int trials = 10;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  bool exact = true;
};

struct EquivarianceReport {
  std::size_t tested_elements = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0;
  double max_residual = 0;  // inf-norm of P_M sigma(W x) - sigma(W P_N x)
  bool exact_run = false;
  bool exact_pass = false;
  bool pass = false;
};

// Randomized float check on every element plus the exact integer check.
// Inputs are integers in [-9, 9] drawn from `options.seed`. The exact path
// uses the layer's theta when integral, otherwise the first primes.
EquivarianceReport CheckEquivariance(const TiedLayer& layer, const JointAction& joint,
                                     const EquivarianceOptions& options = {});
EquivarianceReport CheckEquivariance(const TiedLayer& layer,
                                     std::span<const JointElement> elements,
                                     const EquivarianceOptions& options = {});
// For weights that need not come from a sharing structure. The exact path
// runs only when every entry is an integer.
EquivarianceReport CheckEquivariance(const WeightMatrix& w, const Nonlinearity& sigma,
                                     std::span<const JointElement> elements,
                                     const EquivarianceOptions& options = {});

// Checks the layer against both groups; returns false only when it passes
// on `joint` but fails on the subgroup. Throws Error(kNotSubgroup) if some
// element of `sub_joint` is missing from `joint`.
bool CheckSubgroupMonotonicity(const TiedLayer& layer, const JointAction& joint,
                               const JointAction& sub_joint,
                               const EquivarianceOptions& options = {});

// Equivariance of x -> second(first(x)) under the pairing of the outer
// actions. Both joints must share the reference group and the middle action
// (Error(kActionMismatch) otherwise).
EquivarianceReport ComposeLayers(const TiedLayer& first, const TiedLayer& second,
                                 const JointAction& joint_nm,
                                 const JointAction& joint_mo,
                                 const EquivarianceOptions& options = {});

struct GroupConvLayer {
  SharingStructure structure;
  TiedLayer layer;
};

// Sparse design with the output identified with G (regular action, point 0
// is the identity). With `tie_across_orbits` the parameters theta_{a,p} are
// shared over p. Default theta: the first primes.
GroupConvLayer GroupConv(const JointAction& joint, const std::set<ElementId>& a,
                         bool tie_across_orbits,
                         std::optional<std::vector<double>> theta = std::nullopt);

class AdjacencyMatrix {
 public:
  // Throws Error(kSizeMismatch) for a non-square input and
  // Error(kInvalidArgument) for non-binary entries.
  explicit AdjacencyMatrix(const std::vector<std::vector<int>>& rows);

  int size() const { return n_; }
  bool operator()(int i, int j) const { return bits_[i * n_ + j] != 0; }

 private:
  int n_;
  std::vector<std::uint8_t> bits_;
};

// Relations: color 1 = {(n, m) : B[m][n] = 1} (kept even when empty),
// color 2 = {(n, n)}. The merged weights are theta_1 B + theta_2 I.
SharingStructure GraphConvStructure(const AdjacencyMatrix& b);

}  // namespace eqshare

#endif  // EQSHARE_LAYER_H_
