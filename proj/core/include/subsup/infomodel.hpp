// Copyright 2026 The Authors.
//
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

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "subsup/setcore.hpp"

namespace subsup {

inline constexpr int kMaxDiscreteVariables = 16;
inline constexpr double kDistributionTolerance = 1e-12;

// n binary variables; tables[c][outcome] with bit i of `outcome` holding X_i.
struct DiscreteClassModel {
  int n = 0;
  std::vector<double> priors;
  std::vector<std::vector<double>> tables;
};

// Zero-mean Gaussians, one covariance per class.
struct GaussianClassModel {
  int n = 0;
  std::vector<double> priors;
  std::vector<Eigen::MatrixXd> covariances;
};

// A class-conditional model p(c) p(x | c). Immutable once constructed; the
// factories validate every invariant and throw ValidationError naming the
// first violation. All information quantities are in nats.
class ClassModel {
 public:
  static ClassModel discrete(std::vector<double> priors, std::vector<std::vector<double>> tables,
                             std::vector<std::string> labels = {});
  static ClassModel gaussian(std::vector<double> priors, std::vector<Eigen::MatrixXd> covariances,
                             std::vector<std::string> labels = {});

  bool is_discrete() const { return std::holds_alternative<DiscreteClassModel>(model_); }
  bool is_gaussian() const { return !is_discrete(); }
  const DiscreteClassModel& as_discrete() const;
  const GaussianClassModel& as_gaussian() const;

  int size() const;
  int class_count() const;
  double prior(int c) const;
  const std::vector<double>& priors() const;
  const std::vector<std::string>& labels() const { return labels_; }
  GroundSet ground() const;
  // Non-fatal notes from validation (e.g. Gaussian variances differing
  // across classes).
  const std::vector<std::string>& warnings() const { return warnings_; }

  // H_c(S) for class c.
  double class_entropy(Subset s, int c) const;
  // H(S) under the class mixture. Gaussian models use the pooled Gaussian
  // with covariance sum_c p(c) Sigma_c.
  double mixture_entropy(Subset s) const;
  // sum_c p(c) H_c(S) = H(S | C).
  double class_conditional_entropy(Subset s) const;

  // Induced model on `variables` (in the given order).
  ClassModel marginal(const std::vector<int>& variables) const;

  // The mixture of a discrete model as one probability table.
  const std::vector<double>& mixture_table() const { return mixture_table_; }
  // sum_c p(c) Sigma_c for a Gaussian model.
  const Eigen::MatrixXd& pooled_covariance() const { return pooled_; }

 private:
  ClassModel() = default;
  void require_variables(Subset s) const;

  std::variant<DiscreteClassModel, GaussianClassModel> model_;
  std::vector<std::string> labels_;
  std::vector<std::string> warnings_;
  std::vector<double> mixture_table_;
  Eigen::MatrixXd pooled_;
};

// Marginal distribution of the variables in S from a full table; the result
// is indexed by the compressed bit pattern of S's members (ascending).
std::vector<double> marginalize_table(const std::vector<double>& table, int n, Subset s);

// Shannon entropy of a probability vector, nats. Zero cells contribute 0.
double entropy_of(const std::vector<double>& probabilities);

// 1/2 ln((2 pi e)^|S| det Sigma_S); 0 for the empty set. Throws NumericalError
// when the principal submatrix is not positive definite.
double gaussian_entropy_of(const Eigen::MatrixXd& covariance, Subset s);

// Marginal entropy of S under the mixture, or H(S | C) when
// condition_on_class is set. Discrete models only.
double discrete_entropy(const ClassModel& model, Subset s, bool condition_on_class);

// Differential entropy of S in one class of a Gaussian model.
double gaussian_entropy(const ClassModel& model, Subset s, int class_index);

// I(A; B | cond) = H(A+cond) + H(B+cond) - H(A+B+cond) - H(cond), under the
// mixture, or averaged over classes (I(A; B | cond, C)) when with_class is set.
// A, B and cond must be pairwise disjoint.
double conditional_mi(const ClassModel& model, Subset a, Subset b, Subset cond, bool with_class);

// I(S; R | x, C) - I(S; R | x) with R = V - S - x.
double ear_score(const ClassModel& model, Subset s, int x);

enum class EdgeWeightVariant { kMarginalMi, kConditionalMi, kClasswiseMi };

const char* to_string(EdgeWeightVariant v);

// Symmetric n x n matrix of pairwise mutual informations, zero diagonal.
struct EdgeWeightMatrix {
  Eigen::MatrixXd weights;
  EdgeWeightVariant variant = EdgeWeightVariant::kMarginalMi;
  int class_index = -1;  // set for kClasswiseMi

  int size() const { return static_cast<int>(weights.rows()); }
};

// kMarginalMi: I(X;Y). kConditionalMi: I(X;Y|C). kClasswiseMi: I(X;Y|C=c)
// and class_index must name a class.
EdgeWeightMatrix mi_edge_weights(const ClassModel& model, EdgeWeightVariant variant, int class_index = -1);

// --- Set-function oracles over a model's variables --------------------------

enum class EntropyKind { kMixture, kClassConditional, kSingleClass };

// f(S) = H(S) of the chosen kind (class_index for kSingleClass).
SetFunction entropy_oracle(const ClassModel& model, EntropyKind kind, int class_index = -1);

// f(A) = I(A; V - A), under the mixture or conditioned on the class.
SetFunction symmetric_mi_oracle(const ClassModel& model, bool with_class);

// Over the ground set V - {x} (elements re-indexed in ascending order of the
// remaining variables): f(S) = I(S; V - x - S | x), or with the class.
SetFunction pivot_partition_oracle(const ClassModel& model, int pivot, bool with_class);

// --- Sampling ----------------------------------------------------------------

struct LabeledSamples {
  std::vector<int> labels;
  Eigen::MatrixXd x;  // one row per sample
};

// Draws classes from the priors, then x from that class. Discrete outcomes are
// returned as 0/1 coordinates. Deterministic for a given seed.
LabeledSamples draw_samples(const ClassModel& model, std::size_t count, std::uint64_t seed);

}  // namespace subsup
