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

#include "subsup/harness/synth.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "subsup/error.hpp"
#include "subsup/random.hpp"

namespace subsup::harness {

namespace {

int effective_target(const SynthSpec& spec) { return std::min(spec.target, spec.n - 1); }

// Covariance of the linear chain for one sign of the discriminative term.
Eigen::MatrixXd chain_covariance(const SynthSpec& spec, double sign) {
  const int n = spec.n;
  const int target = effective_target(spec);
  Eigen::MatrixXd coef = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) coef(i, i - 1) = spec.common_strength;
  coef(target, spec.source) += sign * spec.disc_strength;

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  cov(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const Eigen::VectorXd b = coef.row(i).head(i).transpose();
    const Eigen::VectorXd cross = cov.topLeftCorner(i, i) * b;
    cov.row(i).head(i) = cross.transpose();
    cov.col(i).head(i) = cross;
    // Unit variance: the noise absorbs 1 - b' S b, which is negative when the
    // strengths are too large; the eigenvalue check below then reports it.
    cov(i, i) = 1.0;
  }
  return cov;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void SynthSpec::validate() const {
  if (n < 2 || n > GroundSet::kMaxElements) {
    throw ValidationError(ErrorKind::kInvalidArgument, "synth: n must be in [2, 63]");
  }
  if (source < 0 || source >= effective_target(*this)) {
    throw ValidationError(ErrorKind::kInvalidArgument, "synth: need 0 <= source < target");
  }
  if (!std::isfinite(common_strength) || !std::isfinite(disc_strength) || !(diagonal_load >= 0.0)) {
    throw ValidationError(ErrorKind::kInvalidArgument, "synth: strengths must be finite and diagonal_load >= 0");
  }
}

ClassModel make_synthetic_model(const SynthSpec& spec) {
  spec.validate();
  const int n = spec.n;
  std::vector<int> relabel(static_cast<std::size_t>(n));
  std::iota(relabel.begin(), relabel.end(), 0);
  if (spec.relabel) {
    Rng rng(Rng::derive(spec.seed, 0x5e1abe1));
    rng.shuffle(std::span<int>(relabel));
  }

  std::vector<Eigen::MatrixXd> covs;
  int c = 1;
  for (double sign : {1.0, -1.0}) {
    Eigen::MatrixXd cov = chain_covariance(spec, sign);
    cov.diagonal().array() += spec.diagonal_load;
    const Eigen::VectorXd scale = cov.diagonal().array().rsqrt();
    cov = scale.asDiagonal() * cov * scale.asDiagonal();
    const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(cov, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (!(smallest > 1e-10)) {
      throw ValidationError(ErrorKind::kPreconditionViolation,
                            "synth: class " + std::to_string(c) + " covariance is not positive definite (smallest eigenvalue " +
                                fmt(smallest) + "); lower the strengths or raise diagonal_load");
    }
    Eigen::MatrixXd permuted(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        permuted(relabel[static_cast<std::size_t>(i)], relabel[static_cast<std::size_t>(j)]) = cov(i, j);
    covs.push_back(std::move(permuted));
    ++c;
  }
  return ClassModel::gaussian({0.5, 0.5}, std::move(covs));
}

ClassModel estimate_gaussian_model(const LabeledSamples& samples, const std::vector<double>& priors) {
  const auto classes = priors.size();
  const Eigen::Index n = samples.x.cols();
  std::vector<Eigen::MatrixXd> covs(classes, Eigen::MatrixXd::Zero(n, n));
  std::vector<std::size_t> counts(classes, 0);
  for (Eigen::Index r = 0; r < samples.x.rows(); ++r) {
    const int label = samples.labels[static_cast<std::size_t>(r)];
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw ValidationError(ErrorKind::kIndexOutOfRange, "sample label outside the class range");
    }
    const Eigen::VectorXd x = samples.x.row(r).transpose();
    covs[static_cast<std::size_t>(label)].selfadjointView<Eigen::Lower>().rankUpdate(x);
    ++counts[static_cast<std::size_t>(label)];
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (counts[c] == 0) {
      throw ValidationError(ErrorKind::kPreconditionViolation, "class " + std::to_string(c + 1) + " has no samples");
    }
    Eigen::MatrixXd full = covs[c].selfadjointView<Eigen::Lower>();
    covs[c] = full / static_cast<double>(counts[c]);
  }
  return ClassModel::gaussian(priors, std::move(covs));
}

}  // namespace subsup::harness
