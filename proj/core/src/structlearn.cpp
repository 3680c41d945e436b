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

#include "subsup/structlearn.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "subsup/error.hpp"
#include "subsup/random.hpp"

namespace subsup {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(b)] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

Edge normalized(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

std::vector<Edge> normalized_sorted(std::vector<Edge> edges) {
  for (Edge& e : edges) e = normalized(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

TreeStructure::TreeStructure(int n, std::vector<Edge> edges) : n_(n), edges_(normalized_sorted(std::move(edges))) {
  if (!is_spanning_tree(n_, edges_)) {
    throw ValidationError(ErrorKind::kInvariantViolation,
                          "edge list is not a spanning tree on " + std::to_string(n) + " variables");
  }
}

bool TreeStructure::has_edge(int u, int v) const {
  return std::binary_search(edges_.begin(), edges_.end(), normalized(u, v));
}

bool TreeStructure::is_spanning_tree(int n, const std::vector<Edge>& edges) {
  if (n < 1 || static_cast<int>(edges.size()) != n - 1) return false;
  DisjointSets sets(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
    if (!sets.unite(u, v)) return false;
  }
  return true;
}

TreeStructure chow_liu_tree(const EdgeWeightMatrix& weights) {
  const int n = weights.size();
  if (n < 2) throw ValidationError(ErrorKind::kInvalidArgument, "Chow-Liu needs at least 2 variables");
  std::vector<Edge> candidates;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) candidates.emplace_back(i, j);
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Edge& a, const Edge& b) {
    return weights.weights(a.first, a.second) > weights.weights(b.first, b.second);
  });
  DisjointSets sets(n);
  std::vector<Edge> chosen;
  for (const Edge& e : candidates) {
    if (sets.unite(e.first, e.second)) chosen.push_back(e);
    if (static_cast<int>(chosen.size()) == n - 1) break;
  }
  return TreeStructure(n, std::move(chosen));
}

double tree_weight(const EdgeWeightMatrix& weights, const TreeStructure& tree) {
  double total = 0.0;
  for (const auto& [u, v] : tree.edges()) total += weights.weights(u, v);
  return total;
}

const char* to_string(EarSign s) {
  switch (s) {
    case EarSign::kPrinted: return "printed";
    case EarSign::kProse: return "prose";
    case EarSign::kConsistent: return "consistent";
  }
  return "unknown";
}

EarSign parse_ear_sign(std::string_view name) {
  if (name == "printed") return EarSign::kPrinted;
  if (name == "prose") return EarSign::kProse;
  if (name == "consistent") return EarSign::kConsistent;
  throw ValidationError(ErrorKind::kInvalidArgument, "unknown ear sign '" + std::string(name) + "'");
}

namespace {

constexpr double kPivotTieTolerance = 1e-12;

struct PartitionChoice {
  int pivot = -1;         // local index in the sub-model
  Subset part;            // local indices of the sub-model, excludes the pivot
  double score = std::numeric_limits<double>::infinity();
};

void discriminative_tree_rec(const ClassModel& model, const std::vector<int>& globals,
                             const DiscriminativeTreeOptions& options, std::vector<Edge>& out) {
  const int m = model.size();
  if (m <= 1) return;
  if (m == 2) {
    out.push_back(normalized(globals[0], globals[1]));
    return;
  }

  std::uint64_t globals_mask = 0;
  for (int g : globals) globals_mask |= std::uint64_t{1} << g;

  PartitionChoice best;
  for (int pivot = 0; pivot < m; ++pivot) {
    const SetFunction with_class = pivot_partition_oracle(model, pivot, true);
    const SetFunction without_class = pivot_partition_oracle(model, pivot, false);
    const bool flip_inner = options.sign == EarSign::kProse;
    const SetFunction& inner_f = flip_inner ? without_class : with_class;
    const SetFunction& inner_g = flip_inner ? with_class : without_class;

    Subset part;
    if (m <= options.brute_force_max_variables) {
      part = brute_force_minimize(inner_f - inner_g, MinimizeMode::kProperNonempty).minimizer;
    } else {
      SspOptions ssp = options.ssp;
      ssp.seed = Rng::derive(options.ssp.seed, globals_mask ^ (static_cast<std::uint64_t>(globals[static_cast<std::size_t>(pivot)]) << 56));
      part = ssp_minimize(inner_f, inner_g, ssp).best.minimizer;
    }

    const double f_val = with_class(part);
    const double g_val = without_class(part);
    const double score = options.sign == EarSign::kConsistent ? f_val - g_val : g_val - f_val;
    if (score < best.score - kPivotTieTolerance) {
      best.pivot = pivot;
      best.part = part;
      best.score = score;
    }
  }

  // Map the partition (indexed over the sub-model minus the pivot) back to
  // sub-model indices.
  std::vector<int> side_a{best.pivot};
  std::vector<int> side_b{best.pivot};
  int local = 0;
  for (int v = 0; v < m; ++v) {
    if (v == best.pivot) continue;
    (best.part.contains(local) ? side_a : side_b).push_back(v);
    ++local;
  }
  for (const auto& side : {side_a, side_b}) {
    std::vector<int> sorted = side;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> child_globals;
    for (int v : sorted) child_globals.push_back(globals[static_cast<std::size_t>(v)]);
    discriminative_tree_rec(model.marginal(sorted), child_globals, options, out);
  }
}

}  // namespace

TreeStructure make_discriminative_tree(const ClassModel& model, const DiscriminativeTreeOptions& options) {
  options.ssp.validate();
  const int n = model.size();
  if (n < 2) throw ValidationError(ErrorKind::kInvalidArgument, "discriminative tree needs at least 2 variables");
  std::vector<int> globals(static_cast<std::size_t>(n));
  std::iota(globals.begin(), globals.end(), 0);
  std::vector<Edge> edges;
  discriminative_tree_rec(model, globals, options, edges);
  return TreeStructure(n, std::move(edges));
}

int Classifier::classify(std::span<const double> x) const {
  int best = 0;
  double best_score = log_prior(0) + log_likelihood(0, x);
  for (int c = 1; c < class_count(); ++c) {
    const double score = log_prior(c) + log_likelihood(c, x);
    const double margin = std::isfinite(best_score) ? 1e-12 * std::max(1.0, std::abs(best_score)) : 0.0;
    if (score > best_score + margin) {
      best = c;
      best_score = score;
    }
  }
  return best;
}

namespace {

double safe_log(double p) { return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity(); }

// Tree-structured Gaussian precision matching the edge and vertex covariances.
Eigen::MatrixXd tree_precision(const Eigen::MatrixXd& cov, const std::vector<Edge>& edges) {
  const Eigen::Index n = cov.rows();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : edges) {
    Eigen::Matrix2d block;
    block << cov(u, u), cov(u, v), cov(v, u), cov(v, v);
    const Eigen::Matrix2d inv = block.inverse();
    k(u, u) += inv(0, 0);
    k(u, v) += inv(0, 1);
    k(v, u) += inv(1, 0);
    k(v, v) += inv(1, 1);
    ++degree[static_cast<std::size_t>(u)];
    ++degree[static_cast<std::size_t>(v)];
  }
  for (Eigen::Index v = 0; v < n; ++v) k(v, v) -= (degree[static_cast<std::size_t>(v)] - 1) / cov(v, v);
  return k;
}

double log_det_pd(const Eigen::MatrixXd& m) {
  const Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw NumericalError("matrix is not positive definite");
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double gaussian_log_density(const Eigen::MatrixXd& precision, double log_det_precision, std::span<const double> x) {
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  const double n = static_cast<double>(x.size());
  return 0.5 * log_det_precision - 0.5 * v.dot(precision * v) - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

std::uint64_t outcome_of(std::span<const double> x) {
  std::uint64_t outcome = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.5) outcome |= std::uint64_t{1} << i;
  }
  return outcome;
}

}  // namespace

TreeClassifier TreeClassifier::fit(const ClassModel& model, std::vector<Edge> edges) {
  const int n = model.size();
  edges = normalized_sorted(std::move(edges));
  DisjointSets sets(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v >= n || u == v || !sets.unite(u, v)) {
      throw ValidationError(ErrorKind::kInvariantViolation, "classifier edges must form a forest over the model");
    }
  }
  TreeClassifier out;
  out.n_ = n;
  out.discrete_ = model.is_discrete();
  out.edges_ = edges;
  out.priors_ = model.priors();
  const int classes = model.class_count();
  if (out.discrete_) {
    const auto& d = model.as_discrete();
    for (int c = 0; c < classes; ++c) {
      const auto& table = d.tables[static_cast<std::size_t>(c)];
      std::vector<std::array<double, 2>> vertex;
      for (int v = 0; v < n; ++v) {
        const auto m = marginalize_table(table, n, Subset::singleton(v));
        vertex.push_back({m[0], m[1]});
      }
      std::vector<std::array<double, 4>> pair;
      for (const auto& [u, v] : edges) {
        // Compressed index puts the lower variable (u) in bit 0.
        const auto m = marginalize_table(table, n, Subset::singleton(u).with(v));
        pair.push_back({m[0], m[1], m[2], m[3]});
      }
      out.vertex_marginals_.push_back(std::move(vertex));
      out.edge_marginals_.push_back(std::move(pair));
    }
  } else {
    for (const auto& cov : model.as_gaussian().covariances) {
      Eigen::MatrixXd k = tree_precision(cov, edges);
      out.log_dets_.push_back(log_det_pd(k));
      out.precisions_.push_back(std::move(k));
    }
  }
  return out;
}

double TreeClassifier::log_prior(int c) const { return safe_log(priors_[static_cast<std::size_t>(c)]); }

double TreeClassifier::fitted_probability(int c, std::uint64_t outcome) const {
  if (!discrete_) throw ValidationError(ErrorKind::kUnsupportedMethod, "fitted_probability on a Gaussian classifier");
  const auto& vertex = vertex_marginals_[static_cast<std::size_t>(c)];
  const auto& pair = edge_marginals_[static_cast<std::size_t>(c)];
  double p = 1.0;
  for (int v = 0; v < n_; ++v) p *= vertex[static_cast<std::size_t>(v)][(outcome >> v) & 1U];
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    const std::size_t a = (outcome >> u) & 1U;
    const std::size_t b = (outcome >> v) & 1U;
    const double denom = vertex[static_cast<std::size_t>(u)][a] * vertex[static_cast<std::size_t>(v)][b];
    if (denom == 0.0) return 0.0;
    p *= pair[e][a + 2 * b] / denom;
  }
  return p;
}

double TreeClassifier::log_likelihood(int c, std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ValidationError(ErrorKind::kInvalidArgument, "input dimension mismatch");
  if (discrete_) return safe_log(fitted_probability(c, outcome_of(x)));
  return gaussian_log_density(precisions_[static_cast<std::size_t>(c)], log_dets_[static_cast<std::size_t>(c)], x);
}

Eigen::MatrixXd TreeClassifier::fitted_covariance(int c) const {
  if (discrete_) throw ValidationError(ErrorKind::kUnsupportedMethod, "fitted_covariance on a discrete classifier");
  return precisions_[static_cast<std::size_t>(c)].inverse();
}

FullModelClassifier::FullModelClassifier(ClassModel model) : model_(std::move(model)) {
  if (model_.is_gaussian()) {
    for (const auto& cov : model_.as_gaussian().covariances) {
      Eigen::MatrixXd k = cov.inverse();
      log_dets_.push_back(log_det_pd(k));
      precisions_.push_back(std::move(k));
    }
  }
}

double FullModelClassifier::log_prior(int c) const { return safe_log(model_.prior(c)); }

double FullModelClassifier::log_likelihood(int c, std::span<const double> x) const {
  if (static_cast<int>(x.size()) != model_.size()) {
    throw ValidationError(ErrorKind::kInvalidArgument, "input dimension mismatch");
  }
  if (model_.is_discrete()) {
    return safe_log(model_.as_discrete().tables[static_cast<std::size_t>(c)][outcome_of(x)]);
  }
  return gaussian_log_density(precisions_[static_cast<std::size_t>(c)], log_dets_[static_cast<std::size_t>(c)], x);
}

TreeClassifier fit_tree_classifier(const ClassModel& model, const TreeStructure& tree) {
  if (tree.size() != model.size()) {
    throw ValidationError(ErrorKind::kInvariantViolation, "tree does not span the model's variables");
  }
  return TreeClassifier::fit(model, tree.edges());
}

TreeClassifier naive_bayes_classifier(const ClassModel& model) { return TreeClassifier::fit(model, {}); }

double empirical_error(const Classifier& classifier, const LabeledSamples& samples) {
  const auto rows = samples.x.rows();
  if (rows == 0) return 0.0;
  std::vector<double> x(static_cast<std::size_t>(samples.x.cols()));
  std::size_t wrong = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index j = 0; j < samples.x.cols(); ++j) x[static_cast<std::size_t>(j)] = samples.x(r, j);
    if (classifier.classify(x) != samples.labels[static_cast<std::size_t>(r)]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(rows);
}

double evaluate_error(const ClassModel& model, const Classifier& classifier, const ErrorEvaluation& method) {
  if (classifier.size() != model.size() || classifier.class_count() != model.class_count()) {
    throw ValidationError(ErrorKind::kInvalidArgument, "classifier does not match the model");
  }
  if (method.method == ErrorMethod::kMonteCarlo) {
    if (method.samples == 0) throw ValidationError(ErrorKind::kInvalidArgument, "Monte-Carlo needs samples > 0");
    return empirical_error(classifier, draw_samples(model, method.samples, method.seed));
  }
  if (!model.is_discrete()) {
    throw ValidationError(ErrorKind::kUnsupportedMethod, "exact error evaluation needs a discrete model");
  }
  const auto& d = model.as_discrete();
  const std::size_t cells = std::size_t{1} << d.n;
  std::vector<double> x(static_cast<std::size_t>(d.n));
  double error = 0.0;
  for (std::size_t outcome = 0; outcome < cells; ++outcome) {
    for (int i = 0; i < d.n; ++i) x[static_cast<std::size_t>(i)] = static_cast<double>((outcome >> i) & 1U);
    const int decided = classifier.classify(x);
    for (int c = 0; c < model.class_count(); ++c) {
      if (c != decided) error += d.priors[static_cast<std::size_t>(c)] * d.tables[static_cast<std::size_t>(c)][outcome];
    }
  }
  return error;
}

TreeStructure tree_from_pruefer(int n, std::span<const int> sequence) {
  if (n < 2) throw ValidationError(ErrorKind::kInvalidArgument, "trees need n >= 2");
  if (static_cast<int>(sequence.size()) != n - 2) {
    throw ValidationError(ErrorKind::kInvalidArgument, "Pruefer sequence must have length n - 2");
  }
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int s : sequence) {
    if (s < 0 || s >= n) throw ValidationError(ErrorKind::kIndexOutOfRange, "Pruefer entry out of range");
    ++degree[static_cast<std::size_t>(s)];
  }
  std::vector<Edge> edges;
  for (int s : sequence) {
    int leaf = 0;
    while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
    edges.push_back(normalized(leaf, s));
    --degree[static_cast<std::size_t>(leaf)];
    --degree[static_cast<std::size_t>(s)];
  }
  int u = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) {
      if (u < 0) {
        u = v;
      } else {
        edges.push_back(normalized(u, v));
        break;
      }
    }
  }
  return TreeStructure(n, std::move(edges));
}

TreeStructure random_tree(int n, std::uint64_t seed) {
  if (n < 2) throw ValidationError(ErrorKind::kInvalidArgument, "random trees need n >= 2");
  Rng rng(seed);
  std::vector<int> sequence(static_cast<std::size_t>(n - 2));
  for (int& s : sequence) s = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
  return tree_from_pruefer(n, sequence);
}

}  // namespace subsup
