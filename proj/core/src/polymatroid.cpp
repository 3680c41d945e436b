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

#include "subsup/polymatroid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "subsup/error.hpp"
#include "subsup/random.hpp"

namespace subsup {

ModularWeights::ModularWeights(std::vector<double> weights) : weights_(std::move(weights)) {}

double ModularWeights::evaluate(Subset a) const {
  if (!a.is_subset_of(Subset::first(size()))) {
    throw ValidationError(ErrorKind::kIndexOutOfRange, "subset " + a.to_string() + " outside modular weights");
  }
  double sum = 0.0;
  for (std::uint64_t b = a.bits(); b != 0; b &= b - 1) sum += weights_[static_cast<std::size_t>(std::countr_zero(b))];
  return sum;
}

double ModularWeights::dot(std::span<const double> c) const {
  if (c.size() != weights_.size()) {
    throw ValidationError(ErrorKind::kGroundSetMismatch, "direction vector length mismatch");
  }
  return std::inner_product(weights_.begin(), weights_.end(), c.begin(), 0.0);
}

SetFunction ModularWeights::as_set_function() const { return modular_function(weights_); }

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  const int n = size();
  std::vector<bool> seen(order_.size(), false);
  for (int x : order_) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) {
      throw ValidationError(ErrorKind::kInvalidArgument, "order is not a permutation of 0.." + std::to_string(n - 1));
    }
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return Permutation(std::move(order));
}

Subset Permutation::prefix(int m) const {
  Subset w;
  for (int i = 0; i < m; ++i) w = w.with(order_[static_cast<std::size_t>(i)]);
  return w;
}

bool Permutation::begins_with(Subset a) const { return prefix(a.size()) == a; }

ModularWeights modular_approximation(const SetFunction& g, const Permutation& pi) {
  if (pi.size() != g.size()) {
    throw ValidationError(ErrorKind::kGroundSetMismatch,
                          "permutation of " + std::to_string(pi.size()) + " elements for a ground set of " +
                              std::to_string(g.size()));
  }
  std::vector<double> h(static_cast<std::size_t>(g.size()));
  Subset w;
  double previous = 0.0;
  for (int i = 0; i < pi.size(); ++i) {
    w = w.with(pi[i]);
    const double current = g(w);
    h[static_cast<std::size_t>(pi[i])] = current - previous;
    previous = current;
  }
  return ModularWeights(std::move(h));
}

Permutation permutation_beginning_with(Subset a, const GroundSet& ground, std::uint64_t seed) {
  ground.require_contains(a);
  std::vector<int> head = a.elements();
  std::vector<int> tail = ground.complement(a).elements();
  Rng rng(seed);
  rng.shuffle(std::span<int>(head));
  rng.shuffle(std::span<int>(tail));
  head.insert(head.end(), tail.begin(), tail.end());
  return Permutation(std::move(head));
}

ModularWeights greedy_vertex(const SetFunction& g, std::span<const double> c) {
  if (static_cast<int>(c.size()) != g.size()) {
    throw ValidationError(ErrorKind::kGroundSetMismatch, "direction vector length mismatch");
  }
  std::vector<int> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return c[static_cast<std::size_t>(x)] > c[static_cast<std::size_t>(y)];
  });
  return modular_approximation(g, Permutation(std::move(order)));
}

ModularWeights greedy_vertex(const SetFunction& g, const ModularWeights& c) { return greedy_vertex(g, c.weights()); }

PropertyReport in_base_polytope(const SetFunction& g, const ModularWeights& h, double tolerance,
                                std::size_t max_witnesses) {
  if (g.size() > kMaxSingleCheckElements) {
    throw ValidationError(ErrorKind::kGroundSetTooLarge, "base polytope check limited to n <= 16");
  }
  if (h.size() != g.size()) {
    throw ValidationError(ErrorKind::kGroundSetMismatch, "modular weights and set function sizes differ");
  }
  PropertyReport report;
  report.tolerance = tolerance;
  auto add = [&](Subset s, double lhs, double rhs) {
    report.holds = false;
    if (report.violations.size() < max_witnesses) report.violations.push_back({s, Subset(), lhs, rhs});
  };
  const std::uint64_t count = std::uint64_t{1} << g.size();
  for (std::uint64_t m = 0; m < count; ++m) {
    const Subset s(m);
    const double hs = h.evaluate(s);
    const double gs = g(s);
    if (hs > gs + tolerance) add(s, hs, gs);
  }
  const Subset full = g.ground().full();
  const double hv = h.evaluate(full);
  const double gv = g(full);
  if (std::abs(hv - gv) > tolerance) add(full, hv, gv);
  return report;
}

}  // namespace subsup
