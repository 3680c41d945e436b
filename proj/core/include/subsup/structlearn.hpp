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
#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "subsup/infomodel.hpp"
#include "subsup/ssp.hpp"

namespace subsup {

using Edge = std::pair<int, int>;  // stored with first < second

// An undirected spanning tree on n variables.
class TreeStructure {
 public:
  // Throws ValidationError unless `edges` is a spanning tree of {0..n-1}.
  TreeStructure(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;

  static bool is_spanning_tree(int n, const std::vector<Edge>& edges);

  friend bool operator==(const TreeStructure&, const TreeStructure&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;  // sorted
};

// Maximum-weight spanning tree (Kruskal). Equal weights are taken in
// lexicographic edge order, so a constant matrix yields the star at 0.
TreeStructure chow_liu_tree(const EdgeWeightMatrix& weights);

double tree_weight(const EdgeWeightMatrix& weights, const TreeStructure& tree);

// Sign conventions for the recursive partition step. With
// F(S) = I(S; R | x, C) and G(S) = I(S; R | x):
//   kPrinted:    inner argmin F - G, pivot chosen by min G - F
//   kProse:      inner argmin G - F, pivot chosen by min G - F
//   kConsistent: inner argmin F - G, pivot chosen by min F - G
enum class EarSign { kPrinted, kProse, kConsistent };

const char* to_string(EarSign s);
EarSign parse_ear_sign(std::string_view name);

struct DiscriminativeTreeOptions {
  SspOptions ssp;
  EarSign sign = EarSign::kConsistent;
  // Sub-problems on at most this many variables are partitioned by
  // enumeration instead of SSP.
  int brute_force_max_variables = 3;
};

// Greedy recursive separator search: for every pivot x, split V - x by
// minimizing the EAR-type partition objective with SSP, keep the best pivot,
// and recurse on x + part and x + rest, joining the subtrees at x.
TreeStructure make_discriminative_tree(const ClassModel& model, const DiscriminativeTreeOptions& options = {});

// Decision rule shared by all classifiers: argmax_c log p(c) + log q_c(x),
// ties (within 1e-12) to the lowest class index.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual int class_count() const = 0;
  virtual int size() const = 0;
  virtual double log_prior(int c) const = 0;
  virtual double log_likelihood(int c, std::span<const double> x) const = 0;

  int classify(std::span<const double> x) const;
};

// Tree- (or forest-) factorized class models fitted by moment matching: per
// class, q_c(x) = prod_v p(x_v) prod_{(u,v)} p(x_u,x_v) / (p(x_u) p(x_v)) with
// marginals from the true class distribution. Gaussian classes store the
// precision of the matching tree-structured Gaussian.
class TreeClassifier : public Classifier {
 public:
  int class_count() const override { return static_cast<int>(priors_.size()); }
  int size() const override { return n_; }
  double log_prior(int c) const override;
  double log_likelihood(int c, std::span<const double> x) const override;

  bool is_discrete() const { return discrete_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& priors() const { return priors_; }
  // Discrete: vertex_marginals[c][v] = {p(X_v=0), p(X_v=1)}.
  const std::vector<std::vector<std::array<double, 2>>>& vertex_marginals() const { return vertex_marginals_; }
  // Discrete: edge_marginals[c][e][a + 2b] = p(X_u=a, X_v=b), edge e = (u, v).
  const std::vector<std::vector<std::array<double, 4>>>& edge_marginals() const { return edge_marginals_; }
  // Gaussian: per-class precision matrices.
  const std::vector<Eigen::MatrixXd>& precisions() const { return precisions_; }

  // q_c(outcome) for a discrete classifier, outcome bit i = X_i.
  double fitted_probability(int c, std::uint64_t outcome) const;
  // Gaussian: the covariance implied by the fitted tree (inverse precision).
  Eigen::MatrixXd fitted_covariance(int c) const;

  static TreeClassifier fit(const ClassModel& model, std::vector<Edge> edges);

 private:
  TreeClassifier() = default;

  int n_ = 0;
  bool discrete_ = true;
  std::vector<Edge> edges_;
  std::vector<double> priors_;
  std::vector<std::vector<std::array<double, 2>>> vertex_marginals_;
  std::vector<std::vector<std::array<double, 4>>> edge_marginals_;
  std::vector<Eigen::MatrixXd> precisions_;
  std::vector<double> log_dets_;
};

// Uses the true class densities.
class FullModelClassifier : public Classifier {
 public:
  explicit FullModelClassifier(ClassModel model);
  int class_count() const override { return model_.class_count(); }
  int size() const override { return model_.size(); }
  double log_prior(int c) const override;
  double log_likelihood(int c, std::span<const double> x) const override;

 private:
  ClassModel model_;
  std::vector<Eigen::MatrixXd> precisions_;
  std::vector<double> log_dets_;
};

// KL projection of each class onto the tree family. The tree must span the
// model's variables.
TreeClassifier fit_tree_classifier(const ClassModel& model, const TreeStructure& tree);

// Edgeless factorization: product of per-class single-variable marginals.
TreeClassifier naive_bayes_classifier(const ClassModel& model);

enum class ErrorMethod { kExact, kMonteCarlo };

struct ErrorEvaluation {
  ErrorMethod method = ErrorMethod::kExact;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
};

// Misclassification rate of `classifier` on data from `model`. Exact
// enumeration needs a discrete model; Monte-Carlo draws `samples` labelled
// points with the given seed.
double evaluate_error(const ClassModel& model, const Classifier& classifier, const ErrorEvaluation& method);

// Error rate on a fixed labelled sample.
double empirical_error(const Classifier& classifier, const LabeledSamples& samples);

// Uniform random spanning tree from a random Pruefer sequence. n >= 2.
TreeStructure random_tree(int n, std::uint64_t seed);

// Decodes a Pruefer sequence of length n - 2 over {0..n-1}.
TreeStructure tree_from_pruefer(int n, std::span<const int> sequence);

}  // namespace subsup
