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

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace subsup {

// A subset of a ground set of at most 63 elements, stored as a bitmask.
// Element i is a member iff bit i is set.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static Subset of(std::initializer_list<int> elements);
  static Subset of(const std::vector<int>& elements);
  static constexpr Subset singleton(int x) { return Subset(std::uint64_t{1} << x); }
  // {0, ..., n-1}
  static constexpr Subset first(int n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int x) const { return (bits_ >> x) & 1U; }
  constexpr bool is_subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr Subset with(int x) const { return Subset(bits_ | (std::uint64_t{1} << x)); }
  constexpr Subset without(int x) const { return Subset(bits_ & ~(std::uint64_t{1} << x)); }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset a, Subset b) = default;
  friend constexpr auto operator<=>(Subset a, Subset b) { return a.bits_ <=> b.bits_; }

  // Members in ascending order.
  std::vector<int> elements() const;
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

class GroundSet {
 public:
  static constexpr int kMaxElements = 63;

  explicit GroundSet(int n);
  explicit GroundSet(std::vector<std::string> labels);

  int size() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  // The element's label, or its index when unlabeled.
  std::string label(int x) const;
  Subset full() const { return Subset::first(n_); }
  Subset complement(Subset a) const { return full() - a; }
  bool contains(Subset a) const { return a.is_subset_of(full()); }
  // Throws ValidationError(kIndexOutOfRange) when a has members >= n.
  void require_contains(Subset a) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.n_ == b.n_; }

 private:
  int n_;
  std::vector<std::string> labels_;
};

// A real-valued set function, normalized so that f(empty) == 0.
//
// The raw map is evaluated once at construction on the empty set; that value
// is kept as offset() and subtracted from every evaluation. Instances are
// immutable and safe to share across threads.
class SetFunction {
 public:
  using RawFn = std::function<double(Subset)>;

  SetFunction(GroundSet ground, RawFn raw);

  const GroundSet& ground() const { return *ground_; }
  int size() const { return ground_->size(); }
  double offset() const { return offset_; }

  // Normalized value; throws ValidationError when a is outside the ground set.
  double evaluate(Subset a) const;
  double operator()(Subset a) const { return evaluate(a); }

 private:
  std::shared_ptr<const GroundSet> ground_;
  std::shared_ptr<const RawFn> raw_;
  double offset_ = 0.0;
};

// rho_f(A, x) = f(A + x) - f(A). Throws if x is already in A.
double incremental_gain(const SetFunction& f, Subset a, int x);

// All 2^n normalized values indexed by bitmask. n <= 24.
std::vector<double> value_table(const SetFunction& f);

// --- Combinators -----------------------------------------------------------

SetFunction operator+(const SetFunction& f, const SetFunction& g);
SetFunction operator-(const SetFunction& f, const SetFunction& g);
SetFunction operator*(double k, const SetFunction& f);

// --- Concrete oracles ------------------------------------------------------

// Explicit table of 2^n values indexed by bitmask (n <= 16).
SetFunction table_function(int n, std::vector<double> values);

// f(A) = sum of weights[i] for i in A.
SetFunction modular_function(std::vector<double> weights);

// Weighted cut of an undirected graph: f(A) = sum of w[i][j] over pairs with
// exactly one endpoint in A. Symmetric and submodular for w >= 0.
SetFunction cut_function(const std::vector<std::vector<double>>& weights);

// --- Property checks -------------------------------------------------------

enum class Property { kSubmodular, kPosimodular, kSymmetric };

const char* to_string(Property p);

struct PropertyViolation {
  Subset a;
  Subset b;  // unused (empty) for single-set properties
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PropertyReport {
  bool holds = true;
  std::vector<PropertyViolation> violations;
  double tolerance = 0.0;
};

inline constexpr double kDefaultPropertyTolerance = 1e-9;
inline constexpr int kMaxPairCheckElements = 10;
inline constexpr int kMaxSingleCheckElements = 16;

// Exhaustive check over all subset pairs (submodular, posimodular; n <= 10)
// or all subsets (symmetric; n <= 16). Submodular: f(A)+f(B) >= f(A|B)+f(A&B).
// Posimodular: f(A)+f(B) >= f(A-B)+f(B-A). Symmetric: f(A) == f(V-A).
// At most max_witnesses violations are recorded; holds reflects all of them.
PropertyReport check_property(const SetFunction& f, Property property,
                              double tolerance = kDefaultPropertyTolerance,
                              std::size_t max_witnesses = 64);

// rho_f(A, x) >= rho_f(B, x) for all A subset of B, x not in B (n <= 10).
// Witnesses are reported as (A, B) with lhs = rho(A, x), rhs = rho(B, x).
PropertyReport check_diminishing_returns(const SetFunction& f,
                                         double tolerance = kDefaultPropertyTolerance,
                                         std::size_t max_witnesses = 64);

}  // namespace subsup
