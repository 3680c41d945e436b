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
#include <iosfwd>
#include <vector>

#include "subsup/setcore.hpp"
#include "subsup/sfm.hpp"

namespace subsup {

struct SspOptions {
  double delta = 1e-9;  // required improvement, nats
  std::uint64_t seed = 0;
  int restarts = 1;
  int local_search_radius = 0;  // 0, 1 or 2
  SfmEngine engine = SfmEngine::kMinNorm;
  int max_iterations = 100;
  MinNormOptions min_norm;

  // Throws ValidationError when a field is out of range.
  void validate() const;
};

enum class SspTermination { kNoImprovement, kIterationCap };

const char* to_string(SspTermination t);

struct SspIterate {
  int restart = 0;
  int iteration = 0;  // 0 is the random start set
  Subset subset;
  double objective = 0.0;  // phi(subset) = f(subset) - g(subset)
  std::uint64_t permutation_seed = 0;
};

struct SspTrace {
  std::vector<SspIterate> iterates;
  // Per restart; kIterationCap if that restart ran out of iterations.
  std::vector<SspTermination> terminated_by;
  // Accepted descent steps per restart (excluding the start set).
  std::vector<int> improvement_rounds;
};

struct SspResult {
  MinimizationResult best;  // minimizer of f - g found, value = phi(minimizer)
  SspTrace trace;
  bool certified = false;  // local search certified the best set (radius > 0)
};

// Submodular-supermodular procedure: approximately minimizes f - g over proper
// non-empty subsets for submodular f and g. Each step replaces g by a modular
// lower bound tight at the current set and minimizes the submodular
// remainder exactly. The returned set is the best over all restarts, ties to
// the smallest bitmask.
SspResult ssp_minimize(const SetFunction& f, const SetFunction& g, const SspOptions& options);

struct CertifyResult {
  Subset subset;
  double objective = 0.0;
  bool certified = false;
  int improvements = 0;
};

// Improves `start` until no exchange of up to `radius` elements (additions,
// deletions, and for radius 2 also swaps) lowers phi by more than delta. Each
// neighbour N is covered by a permutation whose chain passes through N, so the
// modular bound is tight there and the exact submodular step can only match
// or beat phi(N).
CertifyResult local_search_certify(const SetFunction& f, const SetFunction& g, Subset start, int radius,
                                   const SspOptions& options);

// One JSON object per line: {"iteration","objective","restart","subset_bitmask"}.
void write_trace_jsonl(std::ostream& out, const SspTrace& trace);

}  // namespace subsup
