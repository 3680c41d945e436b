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

#include "subsup/infomodel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subsup/error.hpp"
#include "subsup/random.hpp"

namespace subsup {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(ErrorKind::kInvariantViolation, what); }

std::string fmt(double v, int digits = 17) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

void validate_priors(const std::vector<double>& priors) {
  if (priors.empty()) invalid("/class_priors: at least one class is required");
  double sum = 0.0;
  for (std::size_t c = 0; c < priors.size(); ++c) {
    if (!(priors[c] >= 0.0)) invalid("/class_priors/" + std::to_string(c) + ": negative prior");
    sum += priors[c];
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) invalid("/class_priors: priors sum to " + fmt(sum) + ", expected 1");
}

void validate_labels(const std::vector<std::string>& labels, int n) {
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    invalid("/labels: " + std::to_string(labels.size()) + " labels for " + std::to_string(n) + " variables");
  }
  if (!labels.empty()) GroundSet{labels};
}

// Collects the bits of `value` selected by `mask` into the low bits.
std::uint64_t compress_bits(std::uint64_t value, std::uint64_t mask) {
  std::uint64_t out = 0;
  int k = 0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1, ++k) {
    const std::uint64_t bit = m & (~m + 1);
    if (value & bit) out |= std::uint64_t{1} << k;
  }
  return out;
}

Eigen::MatrixXd principal(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return out;
}

void require_class(const ClassModel& model, int c) {
  if (c < 0 || c >= model.class_count()) {
    throw ValidationError(ErrorKind::kIndexOutOfRange, "class index " + std::to_string(c) + " out of range");
  }
}

}  // namespace

ClassModel ClassModel::discrete(std::vector<double> priors, std::vector<std::vector<double>> tables,
                                std::vector<std::string> labels) {
  validate_priors(priors);
  if (tables.size() != priors.size()) {
    invalid("/tables: " + std::to_string(tables.size()) + " tables for " + std::to_string(priors.size()) + " classes");
  }
  const std::size_t cells = tables.front().size();
  int n = 0;
  while ((std::size_t{1} << n) < cells) ++n;
  if (cells < 2 || (std::size_t{1} << n) != cells || n > kMaxDiscreteVariables) {
    invalid("/tables/0: table size " + std::to_string(cells) + " is not 2^n for 1 <= n <= 16");
  }
  for (std::size_t c = 0; c < tables.size(); ++c) {
    const std::string path = "/tables/" + std::to_string(c) + " (class " + std::to_string(c + 1) + ")";
    if (tables[c].size() != cells) invalid(path + ": expected " + std::to_string(cells) + " entries");
    double sum = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      if (!(tables[c][i] >= 0.0)) invalid(path + "/" + std::to_string(i) + ": negative probability");
      sum += tables[c][i];
    }
    if (std::abs(sum - 1.0) > kDistributionTolerance) {
      invalid(path + ": normalization violated, entries sum to " + fmt(sum) + ", expected 1");
    }
  }
  validate_labels(labels, n);

  ClassModel model;
  model.mixture_table_.assign(cells, 0.0);
  for (std::size_t c = 0; c < tables.size(); ++c)
    for (std::size_t i = 0; i < cells; ++i) model.mixture_table_[i] += priors[c] * tables[c][i];
  model.model_ = DiscreteClassModel{n, std::move(priors), std::move(tables)};
  model.labels_ = std::move(labels);
  return model;
}

ClassModel ClassModel::gaussian(std::vector<double> priors, std::vector<Eigen::MatrixXd> covariances,
                                std::vector<std::string> labels) {
  validate_priors(priors);
  if (covariances.size() != priors.size()) {
    invalid("/covariances: " + std::to_string(covariances.size()) + " matrices for " + std::to_string(priors.size()) +
            " classes");
  }
  const Eigen::Index n = covariances.front().rows();
  if (n < 1 || n > GroundSet::kMaxElements) invalid("/covariances/0: dimension outside [1, 63]");
  ClassModel model;
  for (std::size_t c = 0; c < covariances.size(); ++c) {
    const std::string path = "/covariances/" + std::to_string(c) + " (class " + std::to_string(c + 1) + ")";
    const Eigen::MatrixXd& s = covariances[c];
    if (s.rows() != n || s.cols() != n) invalid(path + ": expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > kDistributionTolerance) invalid(path + ": matrix is not symmetric");
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (!(min_eig > 0.0)) invalid(path + ": not positive definite, smallest eigenvalue " + fmt(min_eig, 6));
    if (c > 0 && (s.diagonal() - covariances[0].diagonal()).cwiseAbs().maxCoeff() > 1e-9) {
      model.warnings_.push_back(path + ": variances differ from class 1");
    }
  }
  validate_labels(labels, static_cast<int>(n));
  model.pooled_ = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t c = 0; c < covariances.size(); ++c) model.pooled_ += priors[c] * covariances[c];
  model.model_ = GaussianClassModel{static_cast<int>(n), std::move(priors), std::move(covariances)};
  model.labels_ = std::move(labels);
  return model;
}

const DiscreteClassModel& ClassModel::as_discrete() const {
  if (!is_discrete()) throw ValidationError(ErrorKind::kUnsupportedMethod, "model is not discrete");
  return std::get<DiscreteClassModel>(model_);
}

const GaussianClassModel& ClassModel::as_gaussian() const {
  if (!is_gaussian()) throw ValidationError(ErrorKind::kUnsupportedMethod, "model is not Gaussian");
  return std::get<GaussianClassModel>(model_);
}

int ClassModel::size() const {
  return std::visit([](const auto& m) { return m.n; }, model_);
}

const std::vector<double>& ClassModel::priors() const {
  return std::visit([](const auto& m) -> const std::vector<double>& { return m.priors; }, model_);
}

int ClassModel::class_count() const { return static_cast<int>(priors().size()); }

double ClassModel::prior(int c) const {
  require_class(*this, c);
  return priors()[static_cast<std::size_t>(c)];
}

void ClassModel::require_variables(Subset s) const {
  if (!s.is_subset_of(Subset::first(size()))) {
    throw ValidationError(ErrorKind::kIndexOutOfRange,
                          "subset " + s.to_string() + " references variables outside a model of size " +
                              std::to_string(size()));
  }
}

GroundSet ClassModel::ground() const { return labels_.empty() ? GroundSet(size()) : GroundSet(labels_); }

double ClassModel::class_entropy(Subset s, int c) const {
  require_class(*this, c);
  require_variables(s);
  if (s.empty()) return 0.0;
  if (is_discrete()) {
    const auto& d = std::get<DiscreteClassModel>(model_);
    return entropy_of(marginalize_table(d.tables[static_cast<std::size_t>(c)], d.n, s));
  }
  return gaussian_entropy_of(std::get<GaussianClassModel>(model_).covariances[static_cast<std::size_t>(c)], s);
}

double ClassModel::mixture_entropy(Subset s) const {
  require_variables(s);
  if (s.empty()) return 0.0;
  if (is_discrete()) return entropy_of(marginalize_table(mixture_table_, size(), s));
  return gaussian_entropy_of(pooled_, s);
}

double ClassModel::class_conditional_entropy(Subset s) const {
  double h = 0.0;
  for (int c = 0; c < class_count(); ++c) {
    const double p = priors()[static_cast<std::size_t>(c)];
    if (p > 0.0) h += p * class_entropy(s, c);
  }
  return h;
}

ClassModel ClassModel::marginal(const std::vector<int>& variables) const {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : variables) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw ValidationError(ErrorKind::kInvalidArgument, "marginal variables must be distinct indices in range");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  std::vector<std::string> labels;
  if (!labels_.empty()) {
    for (int v : variables) labels.push_back(labels_[static_cast<std::size_t>(v)]);
  }
  const int k = static_cast<int>(variables.size());
  if (is_discrete()) {
    const auto& d = std::get<DiscreteClassModel>(model_);
    std::vector<std::vector<double>> tables;
    for (const auto& table : d.tables) {
      std::vector<double> out(std::size_t{1} << k, 0.0);
      for (std::size_t outcome = 0; outcome < table.size(); ++outcome) {
        std::size_t key = 0;
        for (int i = 0; i < k; ++i) {
          if ((outcome >> variables[static_cast<std::size_t>(i)]) & 1U) key |= std::size_t{1} << i;
        }
        out[key] += table[outcome];
      }
      tables.push_back(std::move(out));
    }
    return discrete(d.priors, std::move(tables), std::move(labels));
  }
  const auto& g = std::get<GaussianClassModel>(model_);
  std::vector<Eigen::MatrixXd> covs;
  for (const auto& s : g.covariances) covs.push_back(principal(s, variables));
  return gaussian(g.priors, std::move(covs), std::move(labels));
}

std::vector<double> marginalize_table(const std::vector<double>& table, int n, Subset s) {
  const std::uint64_t mask = s.bits();
  std::vector<double> out(std::size_t{1} << s.size(), 0.0);
  const std::size_t cells = std::size_t{1} << n;
  for (std::size_t outcome = 0; outcome < cells; ++outcome) out[compress_bits(outcome, mask)] += table[outcome];
  return out;
}

double entropy_of(const std::vector<double>& probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double gaussian_entropy_of(const Eigen::MatrixXd& covariance, Subset s) {
  if (s.empty()) return 0.0;
  const std::vector<int> idx = s.elements();
  const Eigen::LLT<Eigen::MatrixXd> llt(principal(covariance, idx));
  if (llt.info() != Eigen::Success) {
    throw NumericalError("covariance submatrix on " + s.to_string() + " is not positive definite");
  }
  const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (!(diag(i) > 0.0)) throw NumericalError("covariance submatrix on " + s.to_string() + " is singular");
    log_det += 2.0 * std::log(diag(i));
  }
  const double k = static_cast<double>(idx.size());
  return 0.5 * (k * std::log(2.0 * std::numbers::pi * std::numbers::e) + log_det);
}

double discrete_entropy(const ClassModel& model, Subset s, bool condition_on_class) {
  if (!model.is_discrete()) throw ValidationError(ErrorKind::kUnsupportedMethod, "discrete_entropy on a Gaussian model");
  return condition_on_class ? model.class_conditional_entropy(s) : model.mixture_entropy(s);
}

double gaussian_entropy(const ClassModel& model, Subset s, int class_index) {
  if (!model.is_gaussian()) throw ValidationError(ErrorKind::kUnsupportedMethod, "gaussian_entropy on a discrete model");
  return model.class_entropy(s, class_index);
}

double conditional_mi(const ClassModel& model, Subset a, Subset b, Subset cond, bool with_class) {
  if (!(a & b).empty() || !(a & cond).empty() || !(b & cond).empty()) {
    throw ValidationError(ErrorKind::kInvalidArgument, "conditional_mi needs pairwise disjoint sets");
  }
  auto h = [&](Subset s) { return with_class ? model.class_conditional_entropy(s) : model.mixture_entropy(s); };
  return h(a | cond) + h(b | cond) - h(a | b | cond) - h(cond);
}

double ear_score(const ClassModel& model, Subset s, int x) {
  const GroundSet ground = model.ground();
  if (x < 0 || x >= ground.size()) throw ValidationError(ErrorKind::kIndexOutOfRange, "pivot out of range");
  ground.require_contains(s);
  const Subset pivot = Subset::singleton(x);
  const Subset rest = ground.complement(s | pivot);
  if (s.contains(x) || s.empty() || rest.empty()) {
    throw ValidationError(ErrorKind::kInvalidArgument, "ear_score needs a proper non-empty S of V - {x}");
  }
  return conditional_mi(model, s, rest, pivot, true) - conditional_mi(model, s, rest, pivot, false);
}

const char* to_string(EdgeWeightVariant v) {
  switch (v) {
    case EdgeWeightVariant::kMarginalMi: return "mi";
    case EdgeWeightVariant::kConditionalMi: return "cmi";
    case EdgeWeightVariant::kClasswiseMi: return "classwise";
  }
  return "unknown";
}

EdgeWeightMatrix mi_edge_weights(const ClassModel& model, EdgeWeightVariant variant, int class_index) {
  if (variant == EdgeWeightVariant::kClasswiseMi) {
    if (class_index < 0) throw ValidationError(ErrorKind::kInvalidArgument, "classwise weights need a class index");
    require_class(model, class_index);
  }
  const int n = model.size();
  EdgeWeightMatrix out;
  out.variant = variant;
  out.class_index = variant == EdgeWeightVariant::kClasswiseMi ? class_index : -1;
  out.weights = Eigen::MatrixXd::Zero(n, n);
  auto h = [&](Subset s) {
    switch (variant) {
      case EdgeWeightVariant::kMarginalMi: return model.mixture_entropy(s);
      case EdgeWeightVariant::kConditionalMi: return model.class_conditional_entropy(s);
      case EdgeWeightVariant::kClasswiseMi: return model.class_entropy(s, class_index);
    }
    return 0.0;
  };
  std::vector<double> single(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) single[static_cast<std::size_t>(i)] = h(Subset::singleton(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double mi = single[static_cast<std::size_t>(i)] + single[static_cast<std::size_t>(j)] -
                        h(Subset::singleton(i).with(j));
      out.weights(i, j) = mi;
      out.weights(j, i) = mi;
    }
  }
  return out;
}

SetFunction entropy_oracle(const ClassModel& model, EntropyKind kind, int class_index) {
  if (kind == EntropyKind::kSingleClass) require_class(model, class_index);
  return SetFunction(model.ground(), [model, kind, class_index](Subset s) {
    switch (kind) {
      case EntropyKind::kMixture: return model.mixture_entropy(s);
      case EntropyKind::kClassConditional: return model.class_conditional_entropy(s);
      case EntropyKind::kSingleClass: return model.class_entropy(s, class_index);
    }
    return 0.0;
  });
}

SetFunction symmetric_mi_oracle(const ClassModel& model, bool with_class) {
  const GroundSet ground = model.ground();
  const Subset full = ground.full();
  return SetFunction(ground, [model, with_class, full](Subset a) {
    return conditional_mi(model, a, full - a, Subset(), with_class);
  });
}

SetFunction pivot_partition_oracle(const ClassModel& model, int pivot, bool with_class) {
  const int n = model.size();
  if (pivot < 0 || pivot >= n) throw ValidationError(ErrorKind::kIndexOutOfRange, "pivot out of range");
  if (n < 2) throw ValidationError(ErrorKind::kInvalidArgument, "pivot partitions need n >= 2");
  std::vector<int> others;
  for (int v = 0; v < n; ++v) {
    if (v != pivot) others.push_back(v);
  }
  const Subset pivot_set = Subset::singleton(pivot);
  const Subset rest_all = model.ground().full().without(pivot);
  return SetFunction(GroundSet(n - 1), [model, others, pivot_set, rest_all, with_class](Subset local) {
    Subset s;
    for (int i : local.elements()) s = s.with(others[static_cast<std::size_t>(i)]);
    return conditional_mi(model, s, rest_all - s, pivot_set, with_class);
  });
}

LabeledSamples draw_samples(const ClassModel& model, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const int n = model.size();
  const int classes = model.class_count();
  LabeledSamples out;
  out.labels.resize(count);
  out.x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(count), n);

  auto draw_index = [&rng](const std::vector<double>& p) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      acc += p[i];
      if (u < acc) return i;
    }
    // Rounding left u above the total; take the last non-zero cell.
    std::size_t last = p.size() - 1;
    while (last > 0 && p[last] == 0.0) --last;
    return last;
  };

  std::vector<Eigen::MatrixXd> factors;
  if (model.is_gaussian()) {
    for (const auto& s : model.as_gaussian().covariances) {
      const Eigen::LLT<Eigen::MatrixXd> llt(s);
      if (llt.info() != Eigen::Success) throw NumericalError("covariance is not positive definite");
      factors.push_back(llt.matrixL());
    }
  }
  Eigen::VectorXd z(n);
  for (std::size_t r = 0; r < count; ++r) {
    const int c = classes == 1 ? 0 : static_cast<int>(draw_index(model.priors()));
    out.labels[r] = c;
    if (model.is_discrete()) {
      const std::size_t outcome = draw_index(model.as_discrete().tables[static_cast<std::size_t>(c)]);
      for (int i = 0; i < n; ++i) out.x(static_cast<Eigen::Index>(r), i) = static_cast<double>((outcome >> i) & 1U);
    } else {
      for (int i = 0; i < n; ++i) z(i) = rng.normal();
      out.x.row(static_cast<Eigen::Index>(r)) = (factors[static_cast<std::size_t>(c)] * z).transpose();
    }
  }
  return out;
}

}  // namespace subsup
