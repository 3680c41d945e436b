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
#include <span>
#include <vector>

#include "subsup/setcore.hpp"

namespace subsup {

// A modular function, stored as one weight per ground-set element.
class ModularWeights {
 public:
  explicit ModularWeights(std::vector<double> weights);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int x) const { return weights_[static_cast<std::size_t>(x)]; }
  std::span<const double> weights() const { return weights_; }

  // Sum of member weights; exactly 0 on the empty set.
  double evaluate(Subset a) const;
  double dot(std::span<const double> c) const;

  SetFunction as_set_function() const;

 private:
  std::vector<double> weights_;
};

// An ordering of all n ground-set elements.
class Permutation {
 public:
  // Throws ValidationError unless order is a bijection onto {0..n-1}.
  explicit Permutation(std::vector<int> order);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int i) const { return order_[static_cast<std::size_t>(i)]; }
  std::span<const int> order() const { return order_; }

  // Chain prefix W_m = {order[0], ..., order[m-1]}.
  Subset prefix(int m) const;
  // True when the first |a| positions are exactly the members of a.
  bool begins_with(Subset a) const;

 private:
  std::vector<int> order_;
};

// Chain differences of g along pi: h(pi(i)) = g(W_i) - g(W_{i-1}).
// The result is tight on every prefix W_m and, for submodular g, a lower
// bound on g everywhere.
ModularWeights modular_approximation(const SetFunction& g, const Permutation& pi);

// Seeded uniform shuffle of a followed by a seeded uniform shuffle of its
// complement. Pure function of (a, n, seed).
Permutation permutation_beginning_with(Subset a, const GroundSet& ground, std::uint64_t seed);

// Greedy vertex of the base polytope of g for direction c: the chain
// differences along c sorted non-increasing, ties by ascending index. Maximizes
// c . x over {x : x(S) <= g(S) for all S, x(V) = g(V)} when g is submodular.
ModularWeights greedy_vertex(const SetFunction& g, std::span<const double> c);
ModularWeights greedy_vertex(const SetFunction& g, const ModularWeights& c);

// Brute-force membership test for the base polytope: h(S) <= g(S) + tol for
// every S and |h(V) - g(V)| <= tol. Violations record (S, -, h(S), g(S)).
// n <= 16.
PropertyReport in_base_polytope(const SetFunction& g, const ModularWeights& h,
                                double tolerance = kDefaultPropertyTolerance,
                                std::size_t max_witnesses = 64);

}  // namespace subsup
