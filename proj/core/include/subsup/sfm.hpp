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

#include <cstdint>
#include <string_view>

#include "subsup/setcore.hpp"

namespace subsup {

enum class SfmEngine { kBruteForce, kQueyranne, kMinNorm };

const char* to_string(SfmEngine engine);
// Accepts "brute", "queyranne", "minnorm".
SfmEngine parse_engine(std::string_view name);

enum class MinimizeMode {
  kAll,             // over every subset, including the empty set and V
  kProperNonempty,  // over subsets other than the empty set and V
};

struct MinimizationResult {
  Subset minimizer;
  double value = 0.0;  // f(minimizer), re-evaluated on the caller's oracle
  SfmEngine engine = SfmEngine::kBruteForce;
  std::uint64_t evaluations = 0;
  bool converged = true;  // false only when an iterative engine hit its cap
};

inline constexpr int kMaxBruteForceElements = 20;

// Exhaustive minimization; ties go to the smallest bitmask. n <= 20.
MinimizationResult brute_force_minimize(const SetFunction& f, MinimizeMode mode);

struct QueyranneOptions {
  // Checks symmetry or posimodularity by brute force first (n <= 10) and
  // throws ValidationError(kPreconditionViolation) when neither holds.
  bool verify_precondition = false;
};

// Queyranne's pendant-pair algorithm. Exact over proper non-empty subsets for
// symmetric submodular and, more generally, posimodular functions. Uses
// n(n+1)(n+2)/6 - 1 oracle calls.
MinimizationResult queyranne_minimize(const SetFunction& f, QueyranneOptions options = {});

struct MinNormOptions {
  double tolerance = 1e-9;
  int max_iterations = 1000;
};

// Fujishige-Wolfe minimum-norm-point method over the base polytope of a
// submodular f, minimizing over all subsets. The minimizer is read off the
// level sets of the final point and polished by single-element exchanges.
MinimizationResult min_norm_minimize(const SetFunction& f, MinNormOptions options = {});

// Minimization over proper non-empty subsets (n >= 2). Queyranne is called
// directly; the other engines run 2(n-1) constrained solves that force the
// anchor element 0 in and some u out, or u in and 0 out.
MinimizationResult minimize_proper(const SetFunction& f, SfmEngine engine, MinNormOptions options = {});

}  // namespace subsup
