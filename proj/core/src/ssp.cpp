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

#include "subsup/ssp.hpp"

#include <limits>
#include <ostream>
#include <string>

#include "json.hpp"
#include "subsup/error.hpp"
#include "subsup/polymatroid.hpp"
#include "subsup/random.hpp"

namespace subsup {

void SspOptions::validate() const {
  auto fail = [](const std::string& what) { throw ValidationError(ErrorKind::kInvalidArgument, what); };
  if (!(delta >= 0.0)) fail("delta must be >= 0");
  if (restarts < 1) fail("restarts must be >= 1");
  if (local_search_radius < 0 || local_search_radius > 2) fail("local search radius must be 0, 1 or 2");
  if (max_iterations < 1) fail("max_iterations must be >= 1");
}

const char* to_string(SspTermination t) {
  return t == SspTermination::kNoImprovement ? "no-improvement" : "iteration-cap";
}

namespace {

constexpr std::uint64_t kLocalSearchStream = 0x4c6f63616c000000ULL;

Subset random_proper_subset(int n, Rng& rng) {
  const std::uint64_t proper_count = (std::uint64_t{1} << n) - 2;
  return Subset(1 + rng.uniform_below(proper_count));
}

// Minimizer of f - h over proper non-empty subsets, h the chain differences
// of g along pi.
MinimizationResult descent_step(const SetFunction& f, const SetFunction& g, const Permutation& pi,
                                const SspOptions& options) {
  const ModularWeights h = modular_approximation(g, pi);
  return minimize_proper(f - h.as_set_function(), options.engine, options.min_norm);
}

// Permutation listing `head` (shuffled), then `middle` in the given order,
// then the remaining elements (shuffled).
Permutation chain_through(const GroundSet& ground, Subset head, const std::vector<int>& middle,
                          std::uint64_t seed) {
  Subset used = head;
  for (int x : middle) used = used.with(x);
  std::vector<int> first = head.elements();
  std::vector<int> rest = ground.complement(used).elements();
  Rng rng(seed);
  rng.shuffle(std::span<int>(first));
  rng.shuffle(std::span<int>(rest));
  first.insert(first.end(), middle.begin(), middle.end());
  first.insert(first.end(), rest.begin(), rest.end());
  return Permutation(std::move(first));
}

bool is_proper(Subset a, const GroundSet& ground) { return !a.empty() && a != ground.full(); }

}  // namespace

SspResult ssp_minimize(const SetFunction& f, const SetFunction& g, const SspOptions& options) {
  options.validate();
  if (!(f.ground() == g.ground())) {
    throw ValidationError(ErrorKind::kGroundSetMismatch, "f and g are defined on different ground sets");
  }
  const GroundSet& ground = f.ground();
  if (ground.size() < 2) {
    throw ValidationError(ErrorKind::kInvalidArgument, "SSP needs a ground set with at least 2 elements");
  }
  const SetFunction phi = f - g;

  SspResult result;
  result.best.engine = options.engine;
  result.best.value = std::numeric_limits<double>::infinity();
  bool best_certified = false;

  for (int restart = 0; restart < options.restarts; ++restart) {
    const std::uint64_t restart_seed = Rng::derive(options.seed, static_cast<std::uint64_t>(restart));
    Rng start_rng(restart_seed);
    Subset current = random_proper_subset(ground.size(), start_rng);
    double current_phi = phi(current);
    result.trace.iterates.push_back({restart, 0, current, current_phi, restart_seed});

    double min_val = std::numeric_limits<double>::infinity();
    int rounds = 0;
    SspTermination termination = SspTermination::kIterationCap;
    for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
      const std::uint64_t perm_seed = Rng::derive(restart_seed, static_cast<std::uint64_t>(iteration));
      const Permutation pi = permutation_beginning_with(current, ground, perm_seed);
      const MinimizationResult step = descent_step(f, g, pi, options);
      result.best.evaluations += step.evaluations;
      if (step.value < min_val - options.delta) {
        min_val = step.value;
        current = step.minimizer;
        current_phi = phi(current);
        ++rounds;
        result.trace.iterates.push_back({restart, iteration, current, current_phi, perm_seed});
      } else {
        termination = SspTermination::kNoImprovement;
        break;
      }
    }
    result.trace.terminated_by.push_back(termination);
    result.trace.improvement_rounds.push_back(rounds);

    bool certified = false;
    if (options.local_search_radius > 0) {
      SspOptions local = options;
      local.seed = Rng::derive(restart_seed, kLocalSearchStream);
      const CertifyResult polished = local_search_certify(f, g, current, options.local_search_radius, local);
      if (polished.improvements > 0) {
        current = polished.subset;
        current_phi = polished.objective;
        result.trace.iterates.push_back({restart, options.max_iterations + 1, current, current_phi, local.seed});
      }
      certified = polished.certified;
    }

    if (current_phi < result.best.value ||
        (current_phi == result.best.value && current < result.best.minimizer)) {
      result.best.value = current_phi;
      result.best.minimizer = current;
      best_certified = certified;
    }
  }
  result.certified = best_certified;
  return result;
}

CertifyResult local_search_certify(const SetFunction& f, const SetFunction& g, Subset start, int radius,
                                   const SspOptions& options) {
  if (radius != 1 && radius != 2) {
    throw ValidationError(ErrorKind::kInvalidArgument, "local search radius must be 1 or 2");
  }
  if (!(f.ground() == g.ground())) {
    throw ValidationError(ErrorKind::kGroundSetMismatch, "f and g are defined on different ground sets");
  }
  const GroundSet& ground = f.ground();
  ground.require_contains(start);
  if (!is_proper(start, ground)) {
    throw ValidationError(ErrorKind::kInvalidArgument, "local search needs a proper non-empty start set");
  }
  const SetFunction phi = f - g;
  const int n = ground.size();

  CertifyResult result;
  result.subset = start;
  result.objective = phi(start);
  std::uint64_t counter = 0;

  // Each candidate chain is (head, middle): the chain passes through head and
  // head + middle[0] (+ middle[1]).
  auto try_chain = [&](Subset head, const std::vector<int>& middle) {
    const Permutation pi = chain_through(ground, head, middle, Rng::derive(options.seed, counter++));
    const MinimizationResult step = descent_step(f, g, pi, options);
    const double value = phi(step.minimizer);
    if (value < result.objective - options.delta) {
      result.subset = step.minimizer;
      result.objective = value;
      ++result.improvements;
      return true;
    }
    return false;
  };

  auto sweep = [&]() {
    const Subset a = result.subset;
    for (int e = 0; e < n; ++e) {
      if (!a.contains(e)) {
        if (is_proper(a.with(e), ground) && try_chain(a, {e})) return true;
      } else if (is_proper(a.without(e), ground) && try_chain(a.without(e), {e})) {
        return true;
      }
    }
    if (radius < 2) return false;
    for (int e1 = 0; e1 < n; ++e1) {
      for (int e2 = 0; e2 < n; ++e2) {
        if (e1 == e2) continue;
        const bool in1 = a.contains(e1);
        const bool in2 = a.contains(e2);
        if (!in1 && !in2 && e1 < e2) {
          if (is_proper(a.with(e1).with(e2), ground) && try_chain(a, {e1, e2})) return true;
        } else if (in1 && in2 && e1 < e2) {
          const Subset base = a.without(e1).without(e2);
          if (is_proper(base, ground) && try_chain(base, {e1, e2})) return true;
        } else if (in1 && !in2) {
          // Chain A - e1, A - e1 + e2, A + e2.
          const Subset base = a.without(e1);
          if (is_proper(base.with(e2), ground) && try_chain(base, {e2, e1})) return true;
        }
      }
    }
    return false;
  };

  const int cap = options.max_iterations * n * n;
  for (int round = 0; round < cap; ++round) {
    if (!sweep()) {
      result.certified = true;
      break;
    }
  }
  return result;
}

void write_trace_jsonl(std::ostream& out, const SspTrace& trace) {
  for (const SspIterate& it : trace.iterates) {
    nlohmann::json record;
    record["restart"] = it.restart;
    record["iteration"] = it.iteration;
    record["subset_bitmask"] = it.subset.bits();
    record["objective"] = it.objective;
    out << record.dump() << '\n';
  }
}

}  // namespace subsup
