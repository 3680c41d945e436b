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

#include "subsup/sfm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "subsup/error.hpp"
#include "subsup/polymatroid.hpp"

namespace subsup {

const char* to_string(SfmEngine engine) {
  switch (engine) {
    case SfmEngine::kBruteForce: return "brute";
    case SfmEngine::kQueyranne: return "queyranne";
    case SfmEngine::kMinNorm: return "minnorm";
  }
  return "unknown";
}

SfmEngine parse_engine(std::string_view name) {
  if (name == "brute") return SfmEngine::kBruteForce;
  if (name == "queyranne") return SfmEngine::kQueyranne;
  if (name == "minnorm") return SfmEngine::kMinNorm;
  throw ValidationError(ErrorKind::kInvalidArgument, "unknown engine '" + std::string(name) + "'");
}

namespace {

// Wraps an oracle and counts calls.
class CountingOracle {
 public:
  explicit CountingOracle(const SetFunction& f) : f_(f) {}
  double operator()(Subset a) {
    ++calls_;
    return f_(a);
  }
  std::uint64_t calls() const { return calls_; }
  SetFunction as_set_function() {
    return SetFunction(f_.ground(), [this](Subset a) { return (*this)(a); });
  }

 private:
  const SetFunction& f_;
  std::uint64_t calls_ = 0;
};

bool better(double value, Subset set, double best_value, Subset best_set) {
  return value < best_value || (value == best_value && set < best_set);
}

}  // namespace

MinimizationResult brute_force_minimize(const SetFunction& f, MinimizeMode mode) {
  const int n = f.size();
  if (n > kMaxBruteForceElements) {
    throw ValidationError(ErrorKind::kGroundSetTooLarge,
                          "brute force limited to n <= 20, got n = " + std::to_string(n));
  }
  const std::uint64_t full = f.ground().full().bits();
  const bool proper = mode == MinimizeMode::kProperNonempty;
  if (proper && n < 2) {
    throw ValidationError(ErrorKind::kInvalidArgument, "no proper non-empty subsets when n < 2");
  }
  MinimizationResult result;
  result.engine = SfmEngine::kBruteForce;
  result.value = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (proper && (m == 0 || m == full)) continue;
    const double v = f(Subset(m));
    ++result.evaluations;
    if (v < result.value) {
      result.value = v;
      result.minimizer = Subset(m);
    }
  }
  return result;
}

MinimizationResult queyranne_minimize(const SetFunction& f, QueyranneOptions options) {
  const int n = f.size();
  if (n < 2) throw ValidationError(ErrorKind::kInvalidArgument, "Queyranne needs n >= 2");
  if (options.verify_precondition) {
    const bool symmetric = check_property(f, Property::kSymmetric, kDefaultPropertyTolerance, 1).holds;
    if (!symmetric && !check_property(f, Property::kPosimodular, kDefaultPropertyTolerance, 1).holds) {
      throw ValidationError(ErrorKind::kPreconditionViolation, "function is neither symmetric nor posimodular");
    }
  }

  CountingOracle oracle(f);
  std::vector<Subset> groups;
  for (int x = 0; x < n; ++x) groups.push_back(Subset::singleton(x));

  MinimizationResult result;
  result.engine = SfmEngine::kQueyranne;
  result.value = std::numeric_limits<double>::infinity();

  while (groups.size() > 1) {
    const std::size_t k = groups.size();
    std::vector<double> alone(k);
    for (std::size_t i = 0; i < k; ++i) alone[i] = oracle(groups[i]);

    // Pendant-pair ordering: start from the first group, then repeatedly add
    // the group u minimizing f(W + u) - f(u).
    std::vector<bool> used(k, false);
    std::vector<std::size_t> order{0};
    used[0] = true;
    Subset w = groups[0];
    while (order.size() < k) {
      std::size_t pick = k;
      double pick_key = std::numeric_limits<double>::infinity();
      for (std::size_t u = 0; u < k; ++u) {
        if (used[u]) continue;
        const double key = oracle(w | groups[u]) - alone[u];
        if (pick == k || key < pick_key) {
          pick = u;
          pick_key = key;
        }
      }
      used[pick] = true;
      order.push_back(pick);
      w = w | groups[pick];
    }

    const std::size_t t = order[k - 2];
    const std::size_t u = order[k - 1];
    if (better(alone[u], groups[u], result.value, result.minimizer)) {
      result.value = alone[u];
      result.minimizer = groups[u];
    }
    groups[t] = groups[t] | groups[u];
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(u));
  }

  result.evaluations = oracle.calls();
  result.value = f(result.minimizer);
  return result;
}

namespace {

// Affine minimizer of the corral: alpha minimizing |S alpha|^2 subject to
// sum(alpha) = 1, from the bordered KKT system.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& corral) {
  const Eigen::Index k = corral.cols();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = corral.transpose() * corral;
  kkt.block(0, k, k, 1).setOnes();
  kkt.block(k, 0, 1, k).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;
  const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(k);
}

Eigen::VectorXd to_vector(const ModularWeights& h) {
  Eigen::VectorXd v(h.size());
  for (int i = 0; i < h.size(); ++i) v(i) = h[i];
  return v;
}

}  // namespace

MinimizationResult min_norm_minimize(const SetFunction& f, MinNormOptions options) {
  const int n = f.size();
  CountingOracle oracle(f);
  const SetFunction counted = oracle.as_set_function();

  auto vertex_for = [&](const Eigen::VectorXd& x) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = -x(i);
    return to_vector(greedy_vertex(counted, c));
  };

  std::vector<Eigen::VectorXd> points{vertex_for(Eigen::VectorXd::Zero(n))};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = points.front();

  bool converged = false;
  constexpr double kWeightFloor = 1e-12;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd q = vertex_for(x);
    const double xx = x.squaredNorm();
    if (xx - x.dot(q) <= options.tolerance * std::max(1.0, xx)) {
      converged = true;
      break;
    }
    const bool duplicate = std::any_of(points.begin(), points.end(), [&](const Eigen::VectorXd& p) {
      return (p - q).lpNorm<Eigen::Infinity>() <= 1e-14 * std::max(1.0, q.lpNorm<Eigen::Infinity>());
    });
    if (duplicate) {
      // No progress is possible from a point the corral already holds.
      converged = true;
      break;
    }
    points.push_back(q);
    lambda.push_back(0.0);

    // Minor cycles.
    for (int minor = 0; minor <= n + 1; ++minor) {
      Eigen::MatrixXd corral(n, static_cast<Eigen::Index>(points.size()));
      for (std::size_t j = 0; j < points.size(); ++j) corral.col(static_cast<Eigen::Index>(j)) = points[j];
      const Eigen::VectorXd alpha = affine_minimizer(corral);
      if (alpha.minCoeff() > kWeightFloor) {
        lambda.assign(alpha.data(), alpha.data() + alpha.size());
        x = corral * alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t j = 0; j < lambda.size(); ++j) {
        const double a = alpha(static_cast<Eigen::Index>(j));
        if (a <= kWeightFloor && lambda[j] - a > 0.0) theta = std::min(theta, lambda[j] / (lambda[j] - a));
      }
      for (std::size_t j = 0; j < lambda.size(); ++j) {
        lambda[j] = (1.0 - theta) * lambda[j] + theta * alpha(static_cast<Eigen::Index>(j));
      }
      std::vector<Eigen::VectorXd> kept_points;
      std::vector<double> kept_lambda;
      for (std::size_t j = 0; j < lambda.size(); ++j) {
        if (lambda[j] > kWeightFloor) {
          kept_points.push_back(points[j]);
          kept_lambda.push_back(lambda[j]);
        }
      }
      const double total = std::accumulate(kept_lambda.begin(), kept_lambda.end(), 0.0);
      for (double& l : kept_lambda) l /= total;
      points = std::move(kept_points);
      lambda = std::move(kept_lambda);
      x = Eigen::VectorXd::Zero(n);
      for (std::size_t j = 0; j < points.size(); ++j) x += lambda[j] * points[j];
    }
  }

  // Level sets of x in ascending order contain a minimizer; evaluate them all,
  // which covers both the strictly-negative and non-positive thresholds.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x(a) < x(b); });
  Subset best;
  double best_value = 0.0;  // f(empty) == 0
  Subset level;
  for (int i = 0; i < n; ++i) {
    level = level.with(order[static_cast<std::size_t>(i)]);
    const double v = oracle(level);
    if (better(v, level, best_value, best)) {
      best_value = v;
      best = level;
    }
  }

  // Single-element exchanges settle the zero-coordinate ambiguity.
  for (bool improved = true; improved;) {
    improved = false;
    Subset candidate = best;
    double candidate_value = best_value;
    for (int e = 0; e < n; ++e) {
      const Subset s = best.contains(e) ? best.without(e) : best.with(e);
      const double v = s.empty() ? 0.0 : oracle(s);
      if (v < candidate_value - 1e-15 * std::max(1.0, std::abs(candidate_value))) {
        candidate = s;
        candidate_value = v;
      }
    }
    if (candidate != best) {
      best = candidate;
      best_value = candidate_value;
      improved = true;
    }
  }

  MinimizationResult result;
  result.engine = SfmEngine::kMinNorm;
  result.minimizer = best;
  result.value = f(best);
  result.evaluations = oracle.calls();
  result.converged = converged;
  return result;
}

namespace {

// f restricted to sets that contain `forced_in` and avoid `forced_out`,
// re-indexed onto the free elements.
struct ConstrainedProblem {
  std::vector<int> free_elements;
  Subset forced_in;

  Subset lift(Subset local) const {
    Subset out = forced_in;
    for (int i : local.elements()) out = out.with(free_elements[static_cast<std::size_t>(i)]);
    return out;
  }
};

MinimizationResult solve_constrained(const SetFunction& f, Subset forced_in, Subset forced_out,
                                     SfmEngine engine, const MinNormOptions& options) {
  ConstrainedProblem problem;
  problem.forced_in = forced_in;
  problem.free_elements = f.ground().complement(forced_in | forced_out).elements();

  MinimizationResult result;
  result.engine = engine;
  if (problem.free_elements.empty()) {
    result.minimizer = forced_in;
    result.value = f(forced_in);
    result.evaluations = 1;
    return result;
  }
  const SetFunction restricted(GroundSet(static_cast<int>(problem.free_elements.size())),
                               [&f, &problem](Subset local) { return f(problem.lift(local)); });
  MinimizationResult local = engine == SfmEngine::kMinNorm ? min_norm_minimize(restricted, options)
                                                           : brute_force_minimize(restricted, MinimizeMode::kAll);
  result.minimizer = problem.lift(local.minimizer);
  result.value = f(result.minimizer);
  result.evaluations = local.evaluations + 1;
  result.converged = local.converged;
  return result;
}

}  // namespace

MinimizationResult minimize_proper(const SetFunction& f, SfmEngine engine, MinNormOptions options) {
  const int n = f.size();
  if (n < 2) throw ValidationError(ErrorKind::kInvalidArgument, "no proper non-empty subsets when n < 2");
  if (engine == SfmEngine::kQueyranne) return queyranne_minimize(f);

  constexpr int kAnchor = 0;
  const Subset anchor = Subset::singleton(kAnchor);
  MinimizationResult best;
  best.engine = engine;
  best.value = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;
  bool converged = true;
  for (int u = 0; u < n; ++u) {
    if (u == kAnchor) continue;
    const Subset other = Subset::singleton(u);
    for (const auto& [in, out] : {std::pair{anchor, other}, std::pair{other, anchor}}) {
      const MinimizationResult r = solve_constrained(f, in, out, engine, options);
      evaluations += r.evaluations;
      converged = converged && r.converged;
      if (better(r.value, r.minimizer, best.value, best.minimizer)) {
        best.value = r.value;
        best.minimizer = r.minimizer;
      }
    }
  }
  best.evaluations = evaluations;
  best.converged = converged;
  return best;
}

}  // namespace subsup
