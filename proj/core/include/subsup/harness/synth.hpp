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

#include "subsup/infomodel.hpp"

namespace subsup::harness {

// Two-class zero-mean Gaussian benchmark model. Variables follow a linear
// chain X_i = common_strength * X_{i-1} + noise in both classes; the target
// variable additionally receives +disc_strength * X_source in class 1 and
// -disc_strength * X_source in class 2. Noise variances are chosen so every
// variance is 1. The variables are then relabelled by a permutation drawn
// from `seed` (identity when relabel is off).
struct SynthSpec {
  int n = 6;
  std::uint64_t seed = 0;
  double common_strength = 0.6;
  double disc_strength = 0.2;
  int source = 0;
  int target = 2;  // clamped to n - 1 for n < 3
  // Ridge added to both covariances before rescaling to unit diagonal.
  double diagonal_load = 0.0;
  bool relabel = true;

  void validate() const;
};

// Throws ValidationError(kPreconditionViolation) naming the smallest
// eigenvalue when a class covariance is not positive definite.
ClassModel make_synthetic_model(const SynthSpec& spec);

// Maximum-likelihood zero-mean covariance per class (1/N normalizer), priors
// kept from `priors`. Every class needs at least one sample.
ClassModel estimate_gaussian_model(const LabeledSamples& samples, const std::vector<double>& priors);

}  // namespace subsup::harness
