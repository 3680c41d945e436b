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
#include <sstream>

#include "oracles.hpp"
#include "subsup/error.hpp"
#include "subsup/polymatroid.hpp"
#include "subsup/ssp.hpp"

namespace subsup {
namespace {

using testing::Engine;

void expect_monotone(const SspTrace& trace) {
  for (std::size_t i = 1; i < trace.iterates.size(); ++i) {
    const auto& prev = trace.iterates[i - 1];
    const auto& cur = trace.iterates[i];
    if (prev.restart != cur.restart) continue;
    EXPECT_LE(cur.objective, prev.objective + 1e-12);
  }
}

TEST(SspOptions, Validation) {
  SspOptions o;
  EXPECT_NO_THROW(o.validate());
  o.restarts = 0;
  EXPECT_THROW(o.validate(), ValidationError);
  o = {};
  o.delta = -1;
  EXPECT_THROW(o.validate(), ValidationError);
  o = {};
  o.local_search_radius = 3;
  EXPECT_THROW(o.validate(), ValidationError);
  o = {};
  o.max_iterations = 0;
  EXPECT_THROW(o.validate(), ValidationError);
}

TEST(Ssp, ModularSubtrahendGivesGlobalOptimumInOneRound) {
  Engine rng(71);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 6;
    const SetFunction f = testing::random_submodular(n, trial, rng);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (double& x : w) x = normal(rng);
    const SetFunction g = modular_function(w);
    SspOptions o;
    o.seed = static_cast<std::uint64_t>(trial);
    o.engine = trial % 2 == 0 ? SfmEngine::kMinNorm : SfmEngine::kBruteForce;
    const auto r = ssp_minimize(f, g, o);
    EXPECT_NEAR(r.best.value, testing::brute_min(f - g, true).value, 1e-6) << trial;
    ASSERT_EQ(r.trace.improvement_rounds.size(), 1u);
    EXPECT_EQ(r.trace.improvement_rounds[0], 1);
    EXPECT_EQ(r.trace.terminated_by[0], SspTermination::kNoImprovement);
  }
}

TEST(Ssp, IdenticalFunctionsGiveZero) {
  Engine rng(73);
  const SetFunction f = testing::random_submodular(5, 0, rng);
  const auto r = ssp_minimize(f, f, {});
  EXPECT_NEAR(r.best.value, 0.0, 1e-12);
  EXPECT_EQ(r.trace.terminated_by[0], SspTermination::kNoImprovement);
  EXPECT_EQ(r.trace.improvement_rounds[0], 1);
}

TEST(Ssp, DescentAndGapOnRandomInstances) {
  Engine rng(79);
  double worst_gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const SetFunction f = testing::random_submodular(8, trial, rng);
    const SetFunction g = testing::random_submodular(8, trial + 1, rng);
    SspOptions o;
    o.restarts = 20;
    o.seed = static_cast<std::uint64_t>(trial);
    const auto r = ssp_minimize(f, g, o);
    expect_monotone(r.trace);
    EXPECT_EQ(r.best.value, (f - g)(r.best.minimizer));
    const double gap = r.best.value - testing::brute_min(f - g, true).value;
    EXPECT_GE(gap, -1e-9);
    worst_gap = std::max(worst_gap, gap);
    // The result is never worse than any start set.
    for (const auto& it : r.trace.iterates)
      if (it.iteration == 0) EXPECT_LE(r.best.value, it.objective + 1e-12);
  }
  RecordProperty("worst_gap", std::to_string(worst_gap));
}

TEST(Ssp, UpperBoundSandwichAtEveryIterate) {
  Engine rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 4;
    const SetFunction f = testing::random_submodular(n, trial, rng);
    const SetFunction g = testing::random_submodular(n, trial + 3, rng);
    SspOptions o;
    o.seed = static_cast<std::uint64_t>(trial);
    const auto r = ssp_minimize(f, g, o);
    for (const auto& it : r.trace.iterates) {
      const Permutation pi = permutation_beginning_with(it.subset, f.ground(), it.permutation_seed);
      const ModularWeights h = modular_approximation(g, pi);
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        EXPECT_GE(f(Subset(s)) - h.evaluate(Subset(s)), f(Subset(s)) - g(Subset(s)) - 1e-9);
      }
      EXPECT_NEAR(f(it.subset) - h.evaluate(it.subset), it.objective, 1e-9);
    }
  }
}

TEST(Ssp, DeterministicForSeed) {
  Engine rng(89);
  const SetFunction f = testing::random_submodular(7, 0, rng);
  const SetFunction g = testing::random_submodular(7, 1, rng);
  SspOptions o;
  o.seed = 42;
  o.restarts = 3;
  const auto a = ssp_minimize(f, g, o);
  const auto b = ssp_minimize(f, g, o);
  std::ostringstream ta, tb;
  write_trace_jsonl(ta, a.trace);
  write_trace_jsonl(tb, b.trace);
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_EQ(a.best.minimizer, b.best.minimizer);
}

TEST(Ssp, TraceExportFormat) {
  const SetFunction f = modular_function({1, -1, 2});
  const SetFunction g = modular_function({0.5, 0.5, 0.5});
  const auto r = ssp_minimize(f, g, {});
  std::ostringstream os;
  write_trace_jsonl(os, r.trace);
  const std::string text = os.str();
  EXPECT_NE(text.find("\"subset_bitmask\""), std::string::npos);
  EXPECT_NE(text.find("\"restart\""), std::string::npos);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), r.trace.iterates.size());
}

TEST(Ssp, RejectsMismatchedGroundSets) {
  try {
    ssp_minimize(modular_function({1, 2}), modular_function({1, 2, 3}), {});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGroundSetMismatch);
  }
}

TEST(Ssp, IterationCapIsReported) {
  Engine rng(97);
  const SetFunction f = testing::random_submodular(6, 0, rng);
  const SetFunction g = testing::random_submodular(6, 1, rng);
  SspOptions o;
  o.max_iterations = 1;
  const auto r = ssp_minimize(f, g, o);
  EXPECT_EQ(r.trace.terminated_by[0], SspTermination::kIterationCap);
}

TEST(LocalSearch, GlobalOptimumIsCertified) {
  Engine rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const SetFunction f = testing::random_submodular(6, trial, rng);
    const SetFunction g = testing::random_submodular(6, trial + 1, rng);
    const Subset best(testing::brute_min(f - g, true).bits);
    const auto c = local_search_certify(f, g, best, 1, {});
    EXPECT_TRUE(c.certified);
    EXPECT_EQ(c.subset, best);
    EXPECT_EQ(c.improvements, 0);
  }
}

TEST(LocalSearch, FindsImprovingAddition) {
  // phi = f - g with g modular: adding element 2 to {0} lowers phi.
  const SetFunction f = modular_function({1, 1, 1, 1});
  const SetFunction g = modular_function({0.5, 0.0, 3.0, 0.0});
  const Subset start = Subset::of({0});
  const auto c = local_search_certify(f, g, start, 1, {});
  const SetFunction phi = f - g;
  EXPECT_LE(c.objective, phi(start.with(2)) + 1e-12);
  EXPECT_TRUE(c.certified);
  EXPECT_GT(c.improvements, 0);
}

TEST(LocalSearch, RadiusOneOutputIsOneExchangeOptimal) {
  Engine rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 5;
    const SetFunction f = testing::random_submodular(n, trial, rng);
    const SetFunction g = testing::random_submodular(n, trial + 2, rng);
    SspOptions o;
    o.seed = static_cast<std::uint64_t>(trial);
    o.local_search_radius = 1;
    const auto r = ssp_minimize(f, g, o);
    EXPECT_TRUE(r.certified);
    EXPECT_TRUE(testing::one_exchange_optimal(f - g, r.best.minimizer, o.delta)) << trial;
    expect_monotone(r.trace);
  }
}

TEST(LocalSearch, RadiusTwoCoversSwaps) {
  Engine rng(107);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 4 + trial % 3;
    const SetFunction f = testing::random_submodular(n, trial, rng);
    const SetFunction g = testing::random_submodular(n, trial + 1, rng);
    const SetFunction phi = f - g;
    const auto c = local_search_certify(f, g, Subset::of({0}), 2, {});
    ASSERT_TRUE(c.certified);
    const Subset a = c.subset;
    const Subset full = Subset::first(n);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        Subset b = a.contains(x) ? a.without(x) : a.with(x);
        b = b.contains(y) ? b.without(y) : b.with(y);
        if (b.empty() || b == full) continue;
        EXPECT_GE(phi(b), c.objective - 1e-9) << trial;
      }
    }
  }
}

TEST(LocalSearch, RejectsBadArguments) {
  const SetFunction f = modular_function({1, 2, 3});
  EXPECT_THROW(local_search_certify(f, f, Subset::of({0}), 3, {}), ValidationError);
  EXPECT_THROW(local_search_certify(f, f, Subset(), 1, {}), ValidationError);
  EXPECT_THROW(local_search_certify(f, f, Subset::first(3), 1, {}), ValidationError);
}

}  // namespace
}  // namespace subsup
