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
#include <string>
#include <utility>
#include <vector>

#include "subsup/harness/synth.hpp"
#include "subsup/infomodel.hpp"
#include "subsup/setcore.hpp"
#include "subsup/ssp.hpp"
#include "subsup/structlearn.hpp"

namespace subsup::harness {

struct MethodError {
  std::string method;
  double error = 0.0;
  double seconds = 0.0;
};

// One experiment cell: a model size and seed, and the error of every method.
struct ReportCell {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<MethodError> methods;
  double seconds = 0.0;
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<ReportCell> cells;
  double seconds = 0.0;

  // Method names in first-seen order.
  std::vector<std::string> methods() const;
  std::vector<int> sizes() const;
  // Mean error of `method` over all cells, or over the cells of size n.
  double mean_error(const std::string& method, int n = -1) const;

  // Aligned plain-text table, with wall times.
  std::string to_text() const;
  // Machine-readable form. Timings are left out unless requested so that
  // reports with fixed seeds are byte-identical across runs.
  std::string to_json(bool include_timings = false) const;
};

// Rounds toward zero to `digits` decimals, the display rule of the tables.
std::string truncate_decimal(double value, int digits = 3);

// Exact errors on the corrected three-variable example for the full model,
// the Chow-Liu tree, the discriminative tree and naive Bayes.
RunReport repro_table2(const DiscriminativeTreeOptions& options = {});

struct Table3Options {
  std::vector<int> sizes{6, 7, 8, 9, 10};
  int seeds = 10;
  std::uint64_t base_seed = 0;
  std::size_t train_samples = 2000;
  std::size_t test_samples = 2000;
  SynthSpec synth;  // n and seed are overwritten per cell
  DiscriminativeTreeOptions tree;
  // Concurrent cells; 0 picks the hardware concurrency.
  int jobs = 0;
};

// Synthetic Gaussian benchmark. Every (n, seed) cell draws a training set,
// learns all trees from the estimated covariances and scores them on a fresh
// test set: Complete, Discriminative, Generative, Naive Bayes, Best Random,
// Average Random (over n uniform random trees).
RunReport table3(const Table3Options& options);

// One (n, seed) cell of table3.
ReportCell table3_cell(int n, std::uint64_t seed, const Table3Options& options);

struct FeatselOptions {
  double k = 1.0;
  // Maximize g - k c instead of minimizing it.
  bool maximize = false;
  SspOptions ssp;
};

struct FeatselReport {
  Subset selected;
  double information = 0.0;  // g(A)
  double cost = 0.0;         // c(A)
  double objective = 0.0;    // g(A) - k c(A)
  bool certified = false;    // no single addition or deletion improves
  std::vector<std::string> notes;

  std::string to_text(const GroundSet& ground) const;
  std::string to_json() const;
};

// Minimizes g - k c over proper non-empty subsets with SSP (f = g, subtracted
// part k c), or maximizes it with the roles swapped, then certifies
// 1-exchange optimality. Requires k >= 0 and matching ground sets.
FeatselReport featsel(const SetFunction& g, const SetFunction& c, const FeatselOptions& options);

}  // namespace subsup::harness
