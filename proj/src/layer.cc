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

#include "eqshare/layer.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "eqshare/error.h"

namespace eqshare {

Nonlinearity Nonlinearity::Leaky(double slope) {
  if (!(slope > 0.0 && slope < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "leaky slope must lie in (0, 1), got " + std::to_string(slope));
  }
  return Nonlinearity(Kind::kLeaky, slope);
}

Eigen::VectorXd Nonlinearity::Apply(const Eigen::VectorXd& v) const {
  return v.unaryExpr([this](double a) { return (*this)(a); });
}

TiedLayer::TiedLayer(ColorMatrix colors, std::vector<double> theta, Nonlinearity sigma)
    : colors_(std::move(colors)), theta_(std::move(theta)), sigma_(sigma) {
  if (static_cast<int>(theta_.size()) != colors_.base_color_count()) {
    throw Error(ErrorCode::kSizeMismatch,
                "theta has " + std::to_string(theta_.size()) + " entries, structure has " +
                    std::to_string(colors_.base_color_count()) + " colors");
  }
}

bool TiedLayer::HasDistinctTheta() const {
  std::set<double> seen(theta_.begin(), theta_.end());
  return seen.size() == theta_.size();
}

void TiedLayer::RequireDistinctTheta() const {
  if (!HasDistinctTheta()) {
    throw Error(ErrorCode::kInvalidArgument, "theta entries must be pairwise distinct");
  }
}

WeightMatrix TiedLayer::Weights() const { return Materialize(colors_, theta_); }

namespace {

template <typename Matrix, typename T>
Matrix MaterializeAs(const ColorMatrix& cm, std::span<const T> theta) {
  if (static_cast<int>(theta.size()) != cm.base_color_count()) {
    throw Error(ErrorCode::kSizeMismatch,
                "theta has " + std::to_string(theta.size()) + " entries, expected " +
                    std::to_string(cm.base_color_count()));
  }
  std::vector<T> merged(cm.merged_count() + 1, T{0});
  for (int k = 1; k <= cm.merged_count(); ++k) {
    for (int c : cm.merged_to_base()[k - 1]) merged[k] += theta[c - 1];
  }
  Matrix w = Matrix::Zero(cm.m_size(), cm.n_size());
  for (int m = 0; m < cm.m_size(); ++m) {
    for (int n = 0; n < cm.n_size(); ++n) w(m, n) = merged[cm.cell(m, n)];
  }
  return w;
}

}  // namespace

WeightMatrix Materialize(const ColorMatrix& cm, std::span<const double> theta) {
  return MaterializeAs<WeightMatrix>(cm, theta);
}

IntMatrix MaterializeExact(const ColorMatrix& cm, std::span<const std::int64_t> theta) {
  return MaterializeAs<IntMatrix>(cm, theta);
}

std::vector<std::int64_t> FirstPrimes(int count) {
  std::vector<std::int64_t> primes;
  for (std::int64_t candidate = 2; static_cast<int>(primes.size()) < count; ++candidate) {
    bool prime = true;
    for (std::int64_t p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

Eigen::VectorXd Forward(const TiedLayer& layer, const Eigen::VectorXd& x) {
  if (x.size() != layer.n_size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "input has " + std::to_string(x.size()) + " entries, layer expects " +
                    std::to_string(layer.n_size()));
  }
  return layer.sigma().Apply(layer.Weights() * x);
}

IntMatrix PermutationMatrix(const Permutation& p) {
  IntMatrix out = IntMatrix::Zero(p.degree(), p.degree());
  for (int j = 0; j < p.degree(); ++j) out(p(j), j) = 1;
  return out;
}

bool Commutes(const IntMatrix& w, const Permutation& pn, const Permutation& pm) {
  for (int m = 0; m < w.rows(); ++m) {
    for (int n = 0; n < w.cols(); ++n) {
      if (w(pm(m), pn(n)) != w(m, n)) return false;
    }
  }
  return true;
}

bool CommutesMatrixForm(const IntMatrix& w, const Permutation& pn,
                        const Permutation& pm) {
  return PermutationMatrix(pm) * w == w * PermutationMatrix(pn);
}

namespace {

Eigen::VectorXd Permute(const Permutation& p, const Eigen::VectorXd& x) {
  Eigen::VectorXd out(x.size());
  for (int i = 0; i < x.size(); ++i) out(p(i)) = x(i);
  return out;
}

void RequireSizes(int n_size, int m_size, std::span<const JointElement> elements) {
  for (const JointElement& e : elements) {
    if (e.n.degree() != n_size || e.m.degree() != m_size) {
      throw Error(ErrorCode::kSizeMismatch,
                  "layer is " + std::to_string(m_size) + " x " + std::to_string(n_size) +
                      " but the action moves " + std::to_string(e.n.degree()) +
                      " inputs and " + std::to_string(e.m.degree()) + " outputs");
    }
  }
}

template <typename Fn>
EquivarianceReport RandomizedCheck(Fn&& phi, int n_size,
                                   std::span<const JointElement> elements,
                                   const std::optional<IntMatrix>& exact_w,
                                   const EquivarianceOptions& options) {
  EquivarianceReport report;
  report.tested_elements = elements.size();
  report.trials = options.trials;
  report.seed = options.seed;
  report.tolerance = options.tolerance;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> draw(-9, 9);
  for (const JointElement& e : elements) {
    for (int t = 0; t < options.trials; ++t) {
      Eigen::VectorXd x(n_size);
      for (int i = 0; i < n_size; ++i) x(i) = draw(rng);
      const Eigen::VectorXd lhs = Permute(e.m, phi(x));
      const Eigen::VectorXd rhs = phi(Permute(e.n, x));
      if (lhs.size() > 0) {
        report.max_residual =
            std::max(report.max_residual, (lhs - rhs).lpNorm<Eigen::Infinity>());
      }
    }
  }
  if (options.exact && exact_w) {
    report.exact_run = true;
    report.exact_pass = std::all_of(elements.begin(), elements.end(),
                                    [&](const JointElement& e) {
                                      return CommutesMatrixForm(*exact_w, e.n, e.m);
                                    });
  }
  report.pass = report.max_residual <= options.tolerance &&
                (!report.exact_run || report.exact_pass);
  return report;
}

bool IsInteger(double v) { return std::isfinite(v) && v == std::round(v) && std::abs(v) < 1e15; }

std::vector<std::int64_t> ExactTheta(const TiedLayer& layer) {
  const auto& theta = layer.theta();
  if (std::all_of(theta.begin(), theta.end(), IsInteger)) {
    return std::vector<std::int64_t>(theta.begin(), theta.end());
  }
  return FirstPrimes(static_cast<int>(theta.size()));
}

}  // namespace

EquivarianceReport CheckEquivariance(const TiedLayer& layer,
                                     std::span<const JointElement> elements,
                                     const EquivarianceOptions& options) {
  RequireSizes(layer.n_size(), layer.m_size(), elements);
  const WeightMatrix w = layer.Weights();
  const std::vector<std::int64_t> theta = ExactTheta(layer);
  return RandomizedCheck(
      [&](const Eigen::VectorXd& x) { return layer.sigma().Apply(w * x); },
      layer.n_size(), elements, MaterializeExact(layer.colors(), theta), options);
}

EquivarianceReport CheckEquivariance(const TiedLayer& layer, const JointAction& joint,
                                     const EquivarianceOptions& options) {
  return CheckEquivariance(layer, joint.elements(), options);
}

EquivarianceReport CheckEquivariance(const WeightMatrix& w, const Nonlinearity& sigma,
                                     std::span<const JointElement> elements,
                                     const EquivarianceOptions& options) {
  RequireSizes(static_cast<int>(w.cols()), static_cast<int>(w.rows()), elements);
  std::optional<IntMatrix> exact;
  if (w.unaryExpr([](double v) { return IsInteger(v) ? 0.0 : 1.0; }).sum() == 0) {
    exact = w.unaryExpr([](double v) { return static_cast<std::int64_t>(std::llround(v)); });
  }
  return RandomizedCheck([&](const Eigen::VectorXd& x) { return sigma.Apply(w * x); },
                         static_cast<int>(w.cols()), elements, exact, options);
}

bool CheckSubgroupMonotonicity(const TiedLayer& layer, const JointAction& joint,
                               const JointAction& sub_joint,
                               const EquivarianceOptions& options) {
  for (const JointElement& e : sub_joint.elements()) {
    if (!joint.Contains(e)) {
      throw Error(ErrorCode::kNotSubgroup,
                  "subgroup element (" + ToCycleString(e.n) + ", " + ToCycleString(e.m) +
                      ") is not in the joint group");
    }
  }
  const bool full = CheckEquivariance(layer, joint, options).pass;
  const bool sub = CheckEquivariance(layer, sub_joint, options).pass;
  return !full || sub;
}

EquivarianceReport ComposeLayers(const TiedLayer& first, const TiedLayer& second,
                                 const JointAction& joint_nm, const JointAction& joint_mo,
                                 const EquivarianceOptions& options) {
  if (!SameGroup(joint_nm.group(), joint_mo.group())) {
    throw Error(ErrorCode::kActionMismatch, "stacked layers use different reference groups");
  }
  if (joint_nm.m_action().images() != joint_mo.n_action().images()) {
    throw Error(ErrorCode::kActionMismatch,
                "the middle action differs between the two layers");
  }
  if (first.m_size() != second.n_size()) {
    throw Error(ErrorCode::kSizeMismatch, "layer sizes do not chain");
  }
  const JointAction outer = MakeJointAction(joint_nm.n_action(), joint_mo.m_action());
  RequireSizes(first.n_size(), second.m_size(), outer.elements());
  const WeightMatrix w1 = first.Weights();
  const WeightMatrix w2 = second.Weights();
  const IntMatrix exact = MaterializeExact(second.colors(), ExactTheta(second)) *
                          MaterializeExact(first.colors(), ExactTheta(first));
  return RandomizedCheck(
      [&](const Eigen::VectorXd& x) {
        return second.sigma().Apply(w2 * first.sigma().Apply(w1 * x));
      },
      first.n_size(), outer.elements(), exact, options);
}

GroupConvLayer GroupConv(const JointAction& joint, const std::set<ElementId>& a,
                         bool tie_across_orbits, std::optional<std::vector<double>> theta) {
  const std::size_t order = joint.group().order();
  if (static_cast<std::size_t>(joint.m_action().target_size()) != order) {
    throw Error(ErrorCode::kSizeMismatch,
                "group convolution needs M = G: output has " +
                    std::to_string(joint.m_action().target_size()) + " nodes, |G| = " +
                    std::to_string(order));
  }
  if (!ClassifyAction(joint.m_action()).regular) {
    throw Error(ErrorCode::kInvalidArgument,
                "group convolution needs the regular action on the output");
  }
  SharingStructure s = SparseDesign(joint, a);
  if (tie_across_orbits) s = TieAcrossOrbits(s);
  ColorMatrix cm = MergeColors(s);
  std::vector<double> params;
  if (theta) {
    params = std::move(*theta);
  } else {
    for (std::int64_t p : FirstPrimes(s.color_count())) params.push_back(static_cast<double>(p));
  }
  TiedLayer layer(std::move(cm), std::move(params));
  return {std::move(s), std::move(layer)};
}

AdjacencyMatrix::AdjacencyMatrix(const std::vector<std::vector<int>>& rows)
    : n_(static_cast<int>(rows.size())) {
  bits_.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw Error(ErrorCode::kSizeMismatch, "adjacency matrix must be square");
    }
    for (int v : row) {
      if (v != 0 && v != 1) {
        throw Error(ErrorCode::kInvalidArgument, "adjacency entries must be 0 or 1");
      }
      bits_.push_back(static_cast<std::uint8_t>(v));
    }
  }
}

SharingStructure GraphConvStructure(const AdjacencyMatrix& b) {
  Relation edges{1, {}, provenance::Explicit{"adjacency"}};
  for (int m = 0; m < b.size(); ++m) {
    for (int n = 0; n < b.size(); ++n) {
      if (b(m, n)) edges.edges.push_back({n, m});
    }
  }
  return WithIdentityRelation(SharingStructure(b.size(), b.size(), {std::move(edges)}));
}

}  // namespace eqshare
