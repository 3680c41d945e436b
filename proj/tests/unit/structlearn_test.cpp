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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "subsup/error.hpp"
#include "subsup/structlearn.hpp"

namespace subsup {
namespace {

using testing::Engine;

// Chain-structured binary model p(x0) p(x1|x0) ... per class.
ClassModel chain_model(int n, int classes, Engine& rng) {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::vector<std::vector<double>> tables;
  for (int c = 0; c < classes; ++c) {
    const double root = u(rng);
    std::vector<std::array<double, 2>> flip(static_cast<std::size_t>(n));
    for (auto& f : flip) f = {u(rng), u(rng)};
    std::vector<double> t(std::size_t{1} << n);
    for (std::size_t x = 0; x < t.size(); ++x) {
      double p = (x & 1U) ? root : 1 - root;
      for (int v = 1; v < n; ++v) {
        const int parent = (x >> (v - 1)) & 1U;
        const double one = flip[v][parent];
        p *= ((x >> v) & 1U) ? one : 1 - one;
      }
      t[x] = p;
    }
    tables.push_back(std::move(t));
  }
  return ClassModel::discrete(std::vector<double>(classes, 1.0 / classes), std::move(tables));
}

std::vector<Edge> chain_edges(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return e;
}

class PriorOnly : public Classifier {
 public:
  int class_count() const override { return 2; }
  int size() const override { return 3; }
  double log_prior(int) const override { return std::log(0.5); }
  double log_likelihood(int, std::span<const double>) const override { return 0.0; }
};

TEST(TreeStructure, Validation) {
  EXPECT_NO_THROW(TreeStructure(3, {{1, 0}, {1, 2}}));
  EXPECT_THROW(TreeStructure(3, {{0, 1}}), ValidationError);
  EXPECT_THROW(TreeStructure(3, {{0, 1}, {1, 0}}), ValidationError);
  EXPECT_THROW(TreeStructure(4, {{0, 1}, {1, 2}, {2, 0}}), ValidationError);
  EXPECT_THROW(TreeStructure(3, {{0, 1}, {1, 3}}), ValidationError);
  EXPECT_THROW(TreeStructure(2, {{1, 1}}), ValidationError);
  const TreeStructure t(3, {{2, 1}, {1, 0}});
  EXPECT_EQ(t.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(t.has_edge(2, 1));
  EXPECT_FALSE(t.has_edge(0, 2));
  EXPECT_NO_THROW(TreeStructure(1, {}));
}

TEST(ChowLiu, ExampleGivesChainForEveryVariant) {
  const ClassModel t1 = testing::table1_model();
  const TreeStructure chain(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(chow_liu_tree(mi_edge_weights(t1, EdgeWeightVariant::kMarginalMi)), chain);
  EXPECT_EQ(chow_liu_tree(mi_edge_weights(t1, EdgeWeightVariant::kConditionalMi)), chain);
  EXPECT_EQ(chow_liu_tree(mi_edge_weights(t1, EdgeWeightVariant::kClasswiseMi, 0)), chain);
  EXPECT_EQ(chow_liu_tree(mi_edge_weights(t1, EdgeWeightVariant::kClasswiseMi, 1)), chain);
}

TEST(ChowLiu, EqualWeightsGiveStarAtZero) {
  EdgeWeightMatrix w{Eigen::MatrixXd::Ones(5, 5), EdgeWeightVariant::kMarginalMi, -1};
  w.weights.diagonal().setZero();
  EXPECT_EQ(chow_liu_tree(w), TreeStructure(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
}

TEST(ChowLiu, MatchesExhaustiveMaximum) {
  Engine rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    EdgeWeightMatrix w{Eigen::MatrixXd::Zero(n, n), EdgeWeightVariant::kMarginalMi, -1};
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) w.weights(i, j) = w.weights(j, i) = u(rng);
    double best = -1.0;
    for (const auto& edges : testing::all_spanning_trees(n)) {
      double total = 0.0;
      for (const auto& [a, b] : edges) total += w.weights(a, b);
      best = std::max(best, total);
    }
    EXPECT_NEAR(tree_weight(w, chow_liu_tree(w)), best, 1e-12);
  }
}

TEST(ChowLiu, NeedsTwoVariables) {
  EXPECT_THROW(chow_liu_tree(EdgeWeightMatrix{Eigen::MatrixXd::Zero(1, 1)}), ValidationError);
}

TEST(DiscriminativeTree, TwoVariables) {
  Engine rng(4);
  EXPECT_EQ(make_discriminative_tree(testing::random_discrete_model(2, 2, rng)), TreeStructure(2, {{0, 1}}));
}

TEST(DiscriminativeTree, ExampleRecoversTheDiscriminativeEdge) {
  const ClassModel t1 = testing::table1_model();
  const TreeStructure tree = make_discriminative_tree(t1);
  EXPECT_TRUE(tree.has_edge(0, 2));
  const double error = evaluate_error(t1, fit_tree_classifier(t1, tree), {});
  EXPECT_NEAR(error, 0.40625, 1e-12);
  EXPECT_NEAR(testing::direct_tree_error(t1, tree.edges()), 0.40625, 1e-12);
}

TEST(DiscriminativeTree, SignConventions) {
  const ClassModel t1 = testing::table1_model();
  DiscriminativeTreeOptions printed;
  printed.sign = EarSign::kPrinted;
  EXPECT_EQ(make_discriminative_tree(t1, printed), TreeStructure(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(parse_ear_sign("prose"), EarSign::kProse);
  EXPECT_STREQ(to_string(EarSign::kConsistent), "consistent");
  EXPECT_THROW(parse_ear_sign("reversed"), ValidationError);
}

TEST(DiscriminativeTree, ClassIdenticalModelStillGivesTree) {
  Engine rng(5);
  const auto t = testing::random_discrete_model(5, 1, rng).as_discrete().tables[0];
  const ClassModel twin = ClassModel::discrete({0.5, 0.5}, {t, t});
  const TreeStructure tree = make_discriminative_tree(twin);
  EXPECT_TRUE(TreeStructure::is_spanning_tree(5, tree.edges()));
}

TEST(DiscriminativeTree, AlwaysReturnsSpanningTrees) {
  Engine rng(6);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + trial % 5;
    const ClassModel m = trial % 2 ? testing::random_discrete_model(n, 2, rng) : testing::random_gaussian_model(n, 2, rng);
    for (EarSign sign : {EarSign::kPrinted, EarSign::kProse, EarSign::kConsistent}) {
      DiscriminativeTreeOptions o;
      o.sign = sign;
      o.ssp.seed = static_cast<std::uint64_t>(trial);
      o.ssp.max_iterations = 1 + trial % 3;
      const TreeStructure t = make_discriminative_tree(m, o);
      EXPECT_EQ(t.size(), n);
      EXPECT_TRUE(TreeStructure::is_spanning_tree(n, t.edges()));
    }
  }
}

TEST(TreeClassifier, IdempotentOnTreeModels) {
  Engine rng(7);
  const ClassModel m = chain_model(5, 2, rng);
  const TreeClassifier q = fit_tree_classifier(m, TreeStructure(5, chain_edges(5)));
  for (int c = 0; c < 2; ++c)
    for (std::uint64_t x = 0; x < 32; ++x) EXPECT_NEAR(q.fitted_probability(c, x), m.as_discrete().tables[c][x], 1e-12);
}

TEST(TreeClassifier, ReproducesVertexAndEdgeMarginals) {
  Engine rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 4;
    const ClassModel m = trial == 0 ? testing::table1_model() : testing::random_discrete_model(n, 2, rng);
    const int size = m.size();
    const auto trees = testing::all_spanning_trees(size);
    const TreeStructure tree(size, trees[static_cast<std::size_t>(trial) % trees.size()]);
    const TreeClassifier q = fit_tree_classifier(m, tree);
    for (int c = 0; c < 2; ++c) {
      std::vector<double> fitted(std::size_t{1} << size);
      double total = 0.0;
      for (std::uint64_t x = 0; x < fitted.size(); ++x) total += fitted[x] = q.fitted_probability(c, x);
      EXPECT_NEAR(total, 1.0, 1e-10);
      const auto& truth = m.as_discrete().tables[c];
      for (const auto& [u, v] : tree.edges()) {
        const Subset uv = Subset::singleton(u).with(v);
        const auto a = marginalize_table(fitted, size, uv);
        const auto b = marginalize_table(truth, size, uv);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
      }
      for (int v = 0; v < size; ++v) {
        const auto a = marginalize_table(fitted, size, Subset::singleton(v));
        const auto b = marginalize_table(truth, size, Subset::singleton(v));
        EXPECT_NEAR(a[0], b[0], 1e-10);
      }
    }
  }
}

TEST(TreeClassifier, UniformStaysUniform) {
  const ClassModel u = ClassModel::discrete({1.0}, {std::vector<double>(8, 0.125)});
  const TreeClassifier q = fit_tree_classifier(u, TreeStructure(3, {{0, 2}, {1, 2}}));
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_NEAR(q.fitted_probability(0, x), 0.125, 1e-15);
}

TEST(TreeClassifier, GaussianMomentMatching) {
  Engine rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 5;
    const ClassModel m = testing::random_gaussian_model(n, 2, rng);
    const TreeStructure tree = random_tree(n, static_cast<std::uint64_t>(trial));
    const TreeClassifier q = fit_tree_classifier(m, tree);
    for (int c = 0; c < 2; ++c) {
      const Eigen::MatrixXd fitted = q.fitted_covariance(c);
      const Eigen::MatrixXd& truth = m.as_gaussian().covariances[c];
      for (int v = 0; v < n; ++v) EXPECT_NEAR(fitted(v, v), truth(v, v), 1e-10);
      for (const auto& [u, v] : tree.edges()) EXPECT_NEAR(fitted(u, v), truth(u, v), 1e-10);
    }
    EXPECT_THROW(q.fitted_probability(0, 0), ValidationError);
  }
}

TEST(TreeClassifier, RejectsTreeOfWrongSize) {
  EXPECT_THROW(fit_tree_classifier(testing::table1_model(), TreeStructure(2, {{0, 1}})), ValidationError);
}

TEST(EvaluateError, ExampleValues) {
  const ClassModel t1 = testing::table1_model();
  EXPECT_NEAR(evaluate_error(t1, FullModelClassifier(t1), {}), 0.375, 1e-12);
  EXPECT_NEAR(testing::direct_full_error(t1), 0.375, 1e-12);
  EXPECT_NEAR(evaluate_error(t1, fit_tree_classifier(t1, TreeStructure(3, {{0, 1}, {1, 2}})), {}), 0.4375, 1e-12);
  EXPECT_NEAR(evaluate_error(t1, PriorOnly(), {}), 0.5, 1e-12);
}

TEST(EvaluateError, ExactAgreesWithDirectComputationForAllTrees) {
  Engine rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    const ClassModel m = testing::random_discrete_model(4, 2, rng);
    for (const auto& edges : testing::all_spanning_trees(4)) {
      EXPECT_NEAR(evaluate_error(m, fit_tree_classifier(m, TreeStructure(4, edges)), {}),
                  testing::direct_tree_error(m, edges), 1e-12);
    }
  }
}

TEST(EvaluateError, GaussianExactIsUnsupported) {
  Engine rng(11);
  const ClassModel g = testing::random_gaussian_model(3, 2, rng);
  try {
    evaluate_error(g, naive_bayes_classifier(g), {});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedMethod);
  }
  const double mc = evaluate_error(g, naive_bayes_classifier(g), {ErrorMethod::kMonteCarlo, 500, 1});
  EXPECT_GE(mc, 0.0);
  EXPECT_LE(mc, 1.0);
}

TEST(EvaluateError, MonteCarloConvergesToExact) {
  const ClassModel t1 = testing::table1_model();
  const TreeClassifier chain = fit_tree_classifier(t1, TreeStructure(3, {{0, 1}, {1, 2}}));
  const double exact = evaluate_error(t1, chain, {});
  const std::size_t samples = 10000;
  const double mc = evaluate_error(t1, chain, {ErrorMethod::kMonteCarlo, samples, 17});
  EXPECT_LE(std::abs(mc - exact), 3.0 * std::sqrt(exact * (1 - exact) / samples));
  EXPECT_EQ(mc, evaluate_error(t1, chain, {ErrorMethod::kMonteCarlo, samples, 17}));
}

TEST(NaiveBayes, Examples) {
  const ClassModel t1 = testing::table1_model();
  EXPECT_NEAR(evaluate_error(t1, naive_bayes_classifier(t1), {}), 0.5, 1e-12);
  EXPECT_TRUE(naive_bayes_classifier(t1).edges().empty());

  // X1 leans to 1 in class 2 only.
  std::vector<double> a(8, 0.125), b(8);
  for (std::size_t x = 0; x < 8; ++x) b[x] = (x & 1U) ? 0.2 : 0.05;
  const ClassModel shifted = ClassModel::discrete({0.5, 0.5}, {a, b});
  EXPECT_LT(evaluate_error(shifted, naive_bayes_classifier(shifted), {}), 0.5);

  const ClassModel single = ClassModel::discrete({1.0}, {a});
  EXPECT_EQ(evaluate_error(single, naive_bayes_classifier(single), {}), 0.0);
}

TEST(ErrorOrdering, ExampleAnchor) {
  const ClassModel t1 = testing::table1_model();
  const double full = evaluate_error(t1, FullModelClassifier(t1), {});
  const double disc = evaluate_error(t1, fit_tree_classifier(t1, make_discriminative_tree(t1)), {});
  const double gen = evaluate_error(
      t1, fit_tree_classifier(t1, chow_liu_tree(mi_edge_weights(t1, EdgeWeightVariant::kMarginalMi))), {});
  const double nb = evaluate_error(t1, naive_bayes_classifier(t1), {});
  EXPECT_LT(full, disc);
  EXPECT_LT(disc, gen);
  EXPECT_LT(gen, nb);
}

TEST(Classifier, TiesGoToLowestClass) {
  const ClassModel t1 = testing::table1_model();
  const TreeClassifier nb = naive_bayes_classifier(t1);
  const double x[] = {1.0, 0.0, 1.0};
  EXPECT_EQ(nb.classify(x), 0);
}

TEST(RandomTree, Examples) {
  EXPECT_EQ(random_tree(2, 99), TreeStructure(2, {{0, 1}}));
  std::set<std::vector<Edge>> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) seen.insert(random_tree(3, seed).edges());
  EXPECT_EQ(seen.size(), 3u);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TreeStructure t = random_tree(8, seed);
    EXPECT_TRUE(TreeStructure::is_spanning_tree(8, t.edges()));
    EXPECT_EQ(t, random_tree(8, seed));
  }
  EXPECT_THROW(random_tree(1, 0), ValidationError);
}

TEST(Pruefer, DecodingIsABijection) {
  std::set<std::vector<Edge>> decoded;
  const int n = 5;
  for (int code = 0; code < 125; ++code) {
    const int seq[] = {code % 5, (code / 5) % 5, code / 25};
    decoded.insert(tree_from_pruefer(n, seq).edges());
  }
  const auto all = testing::all_spanning_trees(n);
  EXPECT_EQ(decoded, std::set<std::vector<Edge>>(all.begin(), all.end()));
  const int bad[] = {7};
  EXPECT_THROW(tree_from_pruefer(3, bad), ValidationError);
  EXPECT_THROW(tree_from_pruefer(4, bad), ValidationError);
}

}  // namespace
}  // namespace subsup
