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

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "subsup/error.hpp"
#include "subsup/infomodel.hpp"
#include "subsup/polymatroid.hpp"

namespace subsup {
namespace {

using testing::Engine;

TEST(ModularWeights, Evaluation) {
  const ModularWeights h({1.0, -2.0, 0.5});
  EXPECT_EQ(h.evaluate(Subset()), 0.0);
  EXPECT_DOUBLE_EQ(h.evaluate(Subset::of({0, 1})), -1.0);
  const double c[] = {1.0, 1.0, 2.0};
  EXPECT_DOUBLE_EQ(h.dot(c), 0.0);
  EXPECT_DOUBLE_EQ(h.as_set_function()(Subset::of({2})), 0.5);
  EXPECT_THROW(h.evaluate(Subset::of({3})), ValidationError);
}

TEST(Permutation, Validation) {
  EXPECT_THROW(Permutation({0, 0, 1}), ValidationError);
  EXPECT_THROW(Permutation({0, 3, 1}), ValidationError);
  const Permutation p({2, 0, 1});
  EXPECT_EQ(p.prefix(2), Subset::of({0, 2}));
  EXPECT_TRUE(p.begins_with(Subset::of({2})));
  EXPECT_TRUE(p.begins_with(Subset::of({0, 2})));
  EXPECT_FALSE(p.begins_with(Subset::of({0})));
  EXPECT_TRUE(p.begins_with(Subset()));
}

TEST(ModularApproximation, RecoversModularWeights) {
  const SetFunction g = modular_function({1, 2, 3});
  for (const auto& order : testing::all_permutations(3)) {
    const ModularWeights h = modular_approximation(g, Permutation(order));
    EXPECT_DOUBLE_EQ(h[0], 1.0);
    EXPECT_DOUBLE_EQ(h[1], 2.0);
    EXPECT_DOUBLE_EQ(h[2], 3.0);
  }
}

TEST(ModularApproximation, ExampleSymmetricMiChain) {
  const ClassModel class1 = ClassModel::discrete({1.0}, {testing::table1_model().as_discrete().tables[0]});
  const SetFunction g = symmetric_mi_oracle(class1, false);
  const ModularWeights h = modular_approximation(g, Permutation::identity(3));
  EXPECT_NEAR(h[0], g(Subset::of({0})), 1e-12);
  EXPECT_NEAR(h[0] + h[1], g(Subset::of({0, 1})), 1e-12);
  EXPECT_NEAR(h.evaluate(Subset::first(3)), 0.0, 1e-12);
  EXPECT_NEAR(g(Subset::first(3)), 0.0, 1e-12);
}

TEST(ModularApproximation, MismatchedPermutation) {
  try {
    modular_approximation(modular_function({1, 2}), Permutation::identity(3));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGroundSetMismatch);
  }
}

TEST(ModularApproximation, LowerBoundAndChainTightness) {
  Engine rng(21);
  std::vector<int> order(6);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 6;
    const SetFunction g = testing::random_submodular(n, trial, rng);
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const Permutation pi(order);
    const ModularWeights h = modular_approximation(g, pi);
    for (int m = 1; m <= n; ++m) EXPECT_NEAR(h.evaluate(pi.prefix(m)), g(pi.prefix(m)), 1e-9);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) EXPECT_LE(h.evaluate(Subset(s)), g(Subset(s)) + 1e-9);
    EXPECT_TRUE(in_base_polytope(g, h).holds);
  }
}

TEST(PermutationBeginningWith, PrefixAndDeterminism) {
  const GroundSet v(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(permutation_beginning_with(Subset::of({2}), v, seed)[0], 2);
    const Permutation p = permutation_beginning_with(Subset::of({1, 3}), v, seed);
    EXPECT_TRUE(p.begins_with(Subset::of({1, 3})));
    const Permutation q = permutation_beginning_with(Subset::of({1, 3}), v, seed);
    EXPECT_TRUE(std::equal(p.order().begin(), p.order().end(), q.order().begin()));
    EXPECT_TRUE(permutation_beginning_with(v.full(), v, seed).begins_with(v.full()));
  }
}

TEST(PermutationBeginningWith, EmptyPrefixCoversAllOrders) {
  const GroundSet v(3);
  std::set<std::vector<int>> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Permutation p = permutation_beginning_with(Subset(), v, seed);
    seen.insert(std::vector<int>(p.order().begin(), p.order().end()));
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(GreedyVertex, UniformDirectionUsesIdentityOrder) {
  Engine rng(4);
  const SetFunction g = testing::random_submodular(5, 0, rng);
  const std::vector<double> c(5, 1.0);
  const ModularWeights h = greedy_vertex(g, c);
  const ModularWeights id = modular_approximation(g, Permutation::identity(5));
  for (int i = 0; i < 5; ++i) EXPECT_EQ(h[i], id[i]);
}

TEST(GreedyVertex, FirstChainDifferenceOnCut) {
  const SetFunction cut = cut_function({{0, 1, 2}, {1, 0, 3}, {2, 3, 0}});
  const std::vector<double> c{0.1, 0.9, 0.5};
  const ModularWeights h = greedy_vertex(cut, c);
  EXPECT_DOUBLE_EQ(h[1], cut(Subset::of({1})));
}

TEST(GreedyVertex, MaximizesOverAllPermutationVertices) {
  Engine rng(8);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 3;
    const SetFunction g = testing::random_submodular(n, trial, rng);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (double& x : c) x = normal(rng);
    const double best = greedy_vertex(g, c).dot(c);
    for (const auto& order : testing::all_permutations(n)) {
      EXPECT_GE(best, modular_approximation(g, Permutation(order)).dot(c) - 1e-9);
    }
  }
}

TEST(InBasePolytope, Examples) {
  EXPECT_TRUE(in_base_polytope(modular_function({0, 0}), ModularWeights({0, 0})).holds);
  Engine rng(2);
  const SetFunction g = testing::random_gaussian_entropy(4, rng);
  std::vector<double> singles;
  for (int x = 0; x < 4; ++x) singles.push_back(g(Subset::singleton(x)));
  const auto report = in_base_polytope(g, ModularWeights(singles));
  EXPECT_FALSE(report.holds);
  bool full_violated = false;
  for (const auto& v : report.violations) full_violated |= v.a == Subset::first(4);
  EXPECT_TRUE(full_violated);
  const SetFunction big(GroundSet(17), [](Subset) { return 0.0; });
  EXPECT_THROW(in_base_polytope(big, ModularWeights(std::vector<double>(17, 0.0))), ValidationError);
}

}  // namespace
}  // namespace subsup
