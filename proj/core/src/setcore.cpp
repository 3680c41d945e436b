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

#include "subsup/setcore.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "subsup/error.hpp"

namespace subsup {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIndexOutOfRange: return "index-out-of-range";
    case ErrorKind::kElementAlreadyPresent: return "element-already-present";
    case ErrorKind::kGroundSetTooLarge: return "ground-set-too-large";
    case ErrorKind::kGroundSetMismatch: return "ground-set-mismatch";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kPreconditionViolation: return "precondition-violation";
    case ErrorKind::kUnsupportedMethod: return "unsupported-method";
    case ErrorKind::kMalformedFile: return "malformed-file";
    case ErrorKind::kInvariantViolation: return "invariant-violation";
    case ErrorKind::kNumerical: return "numerical";
  }
  return "unknown";
}

Subset Subset::of(std::initializer_list<int> elements) {
  return of(std::vector<int>(elements));
}

Subset Subset::of(const std::vector<int>& elements) {
  std::uint64_t bits = 0;
  for (int x : elements) {
    if (x < 0 || x >= 64) {
      throw ValidationError(ErrorKind::kIndexOutOfRange,
                            "subset element " + std::to_string(x) + " out of range");
    }
    bits |= std::uint64_t{1} << x;
  }
  return Subset(bits);
}

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::string Subset::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int x : elements()) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << '}';
  return os.str();
}

GroundSet::GroundSet(int n) : n_(n) {
  if (n < 1 || n > kMaxElements) {
    throw ValidationError(ErrorKind::kGroundSetTooLarge,
                          "ground set size " + std::to_string(n) + " outside [1, 63]");
  }
}

GroundSet::GroundSet(std::vector<std::string> labels)
    : GroundSet(static_cast<int>(labels.size())) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw ValidationError(ErrorKind::kInvalidArgument, "ground set labels are not distinct");
  }
  labels_ = std::move(labels);
}

std::string GroundSet::label(int x) const {
  if (x >= 0 && x < static_cast<int>(labels_.size())) return labels_[static_cast<std::size_t>(x)];
  return std::to_string(x);
}

void GroundSet::require_contains(Subset a) const {
  if (!contains(a)) {
    throw ValidationError(ErrorKind::kIndexOutOfRange,
                          "subset " + a.to_string() + " references elements outside a ground set of size " +
                              std::to_string(n_));
  }
}

SetFunction::SetFunction(GroundSet ground, RawFn raw)
    : ground_(std::make_shared<const GroundSet>(std::move(ground))),
      raw_(std::make_shared<const RawFn>(std::move(raw))) {
  offset_ = (*raw_)(Subset());
}

double SetFunction::evaluate(Subset a) const {
  ground_->require_contains(a);
  if (a.empty()) return 0.0;
  return (*raw_)(a) - offset_;
}

double incremental_gain(const SetFunction& f, Subset a, int x) {
  if (x < 0 || x >= f.size()) {
    throw ValidationError(ErrorKind::kIndexOutOfRange, "element " + std::to_string(x) + " out of range");
  }
  if (a.contains(x)) {
    throw ValidationError(ErrorKind::kElementAlreadyPresent,
                          "element " + std::to_string(x) + " already in " + a.to_string());
  }
  return f(a.with(x)) - f(a);
}

std::vector<double> value_table(const SetFunction& f) {
  if (f.size() > 24) {
    throw ValidationError(ErrorKind::kGroundSetTooLarge, "value table limited to n <= 24");
  }
  const std::uint64_t count = std::uint64_t{1} << f.size();
  std::vector<double> values(count);
  for (std::uint64_t m = 0; m < count; ++m) values[m] = f(Subset(m));
  return values;
}

namespace {

void require_same_ground(const SetFunction& f, const SetFunction& g) {
  if (!(f.ground() == g.ground())) {
    throw ValidationError(ErrorKind::kGroundSetMismatch,
                          "set functions on ground sets of size " + std::to_string(f.size()) + " and " +
                              std::to_string(g.size()));
  }
}

}  // namespace

SetFunction operator+(const SetFunction& f, const SetFunction& g) {
  require_same_ground(f, g);
  return SetFunction(f.ground(), [f, g](Subset a) { return f(a) + g(a); });
}

SetFunction operator-(const SetFunction& f, const SetFunction& g) {
  require_same_ground(f, g);
  return SetFunction(f.ground(), [f, g](Subset a) { return f(a) - g(a); });
}

SetFunction operator*(double k, const SetFunction& f) {
  return SetFunction(f.ground(), [k, f](Subset a) { return k * f(a); });
}

SetFunction table_function(int n, std::vector<double> values) {
  if (n < 1 || n > kMaxSingleCheckElements) {
    throw ValidationError(ErrorKind::kGroundSetTooLarge, "explicit tables support 1 <= n <= 16");
  }
  if (values.size() != (std::size_t{1} << n)) {
    throw ValidationError(ErrorKind::kInvalidArgument,
                          "explicit table needs 2^" + std::to_string(n) + " values, got " +
                              std::to_string(values.size()));
  }
  auto table = std::make_shared<const std::vector<double>>(std::move(values));
  return SetFunction(GroundSet(n), [table](Subset a) { return (*table)[a.bits()]; });
}

SetFunction modular_function(std::vector<double> weights) {
  const int n = static_cast<int>(weights.size());
  auto w = std::make_shared<const std::vector<double>>(std::move(weights));
  return SetFunction(GroundSet(n), [w](Subset a) {
    double sum = 0.0;
    for (std::uint64_t b = a.bits(); b != 0; b &= b - 1) sum += (*w)[static_cast<std::size_t>(std::countr_zero(b))];
    return sum;
  });
}

SetFunction cut_function(const std::vector<std::vector<double>>& weights) {
  const int n = static_cast<int>(weights.size());
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != n) {
      throw ValidationError(ErrorKind::kInvalidArgument, "cut weights must be square");
    }
  }
  auto w = std::make_shared<const std::vector<std::vector<double>>>(weights);
  return SetFunction(GroundSet(n), [w, n](Subset a) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!a.contains(i)) continue;
      for (int j = 0; j < n; ++j) {
        if (!a.contains(j)) sum += 0.5 * ((*w)[i][j] + (*w)[j][i]);
      }
    }
    return sum;
  });
}

const char* to_string(Property p) {
  switch (p) {
    case Property::kSubmodular: return "submodular";
    case Property::kPosimodular: return "posimodular";
    case Property::kSymmetric: return "symmetric";
  }
  return "unknown";
}

namespace {

struct ViolationSink {
  PropertyReport& report;
  std::size_t max_witnesses;

  void add(Subset a, Subset b, double lhs, double rhs) {
    report.holds = false;
    if (report.violations.size() < max_witnesses) report.violations.push_back({a, b, lhs, rhs});
  }
};

void require_checkable(const SetFunction& f, int limit, const char* what) {
  if (f.size() > limit) {
    throw ValidationError(ErrorKind::kGroundSetTooLarge,
                          std::string(what) + " check limited to n <= " + std::to_string(limit) + ", got n = " +
                              std::to_string(f.size()));
  }
}

}  // namespace

PropertyReport check_property(const SetFunction& f, Property property, double tolerance,
                              std::size_t max_witnesses) {
  PropertyReport report;
  report.tolerance = tolerance;
  ViolationSink sink{report, max_witnesses};
  const int limit = property == Property::kSymmetric ? kMaxSingleCheckElements : kMaxPairCheckElements;
  require_checkable(f, limit, to_string(property));

  const std::vector<double> v = value_table(f);
  const std::uint64_t count = v.size();
  const std::uint64_t full = count - 1;

  switch (property) {
    case Property::kSymmetric:
      for (std::uint64_t a = 0; a < count; ++a) {
        const std::uint64_t c = full & ~a;
        if (c < a) continue;
        if (std::abs(v[a] - v[c]) > tolerance) sink.add(Subset(a), Subset(c), v[a], v[c]);
      }
      break;
    case Property::kSubmodular:
      for (std::uint64_t a = 0; a < count; ++a) {
        for (std::uint64_t b = a + 1; b < count; ++b) {
          const double lhs = v[a] + v[b];
          const double rhs = v[a | b] + v[a & b];
          if (lhs < rhs - tolerance) sink.add(Subset(a), Subset(b), lhs, rhs);
        }
      }
      break;
    case Property::kPosimodular:
      for (std::uint64_t a = 0; a < count; ++a) {
        for (std::uint64_t b = a + 1; b < count; ++b) {
          const double lhs = v[a] + v[b];
          const double rhs = v[a & ~b] + v[b & ~a];
          if (lhs < rhs - tolerance) sink.add(Subset(a), Subset(b), lhs, rhs);
        }
      }
      break;
  }
  return report;
}

PropertyReport check_diminishing_returns(const SetFunction& f, double tolerance, std::size_t max_witnesses) {
  PropertyReport report;
  report.tolerance = tolerance;
  ViolationSink sink{report, max_witnesses};
  require_checkable(f, kMaxPairCheckElements, "diminishing-returns");

  const std::vector<double> v = value_table(f);
  const std::uint64_t full = v.size() - 1;
  for (std::uint64_t b = 0; b <= full; ++b) {
    // Enumerate every a that is a subset of b.
    for (std::uint64_t a = b;; a = (a - 1) & b) {
      for (std::uint64_t rest = full & ~b; rest != 0; rest &= rest - 1) {
        const std::uint64_t x = rest & (~rest + 1);
        const double gain_a = v[a | x] - v[a];
        const double gain_b = v[b | x] - v[b];
        if (gain_a < gain_b - tolerance) sink.add(Subset(a), Subset(b), gain_a, gain_b);
      }
      if (a == 0) break;
    }
  }
  return report;
}

}  // namespace subsup
