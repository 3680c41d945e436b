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

#include <filesystem>
#include <string>
#include <string_view>

#include "subsup/infomodel.hpp"
#include "subsup/polymatroid.hpp"
#include "subsup/setcore.hpp"
#include "subsup/structlearn.hpp"

namespace subsup::harness {

// All writers emit canonical JSON: sorted keys, two-space indent, shortest
// round-trip number formatting, trailing newline. Readers throw
// ValidationError(kMalformedFile) with a JSON pointer to the offending field.

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// {"type": "discrete"|"gaussian", "n", "class_priors", "tables"|"covariances",
//  optional "labels"}.
ClassModel parse_model(std::string_view json);
std::string model_to_json(const ClassModel& model);
ClassModel load_model(const std::filesystem::path& path);
void save_model(const ClassModel& model, const std::filesystem::path& path);

// Set-function oracle files. Accepted shapes:
//   {"n": k, "values": [2^k reals]}                     explicit table
//   [w0, w1, ...]  or {"type": "modular", "weights": []} modular
//   {"type": "cut", "weights": [[..]..]}                 graph cut
//   {"type": "gaussian_entropy", "covariance": [[..]..]} 1/2 log det
//   {"type": "model_entropy", "model": {..}, "kind": "mixture"|"class_conditional"|"class", "class": c}
//   {"type": "model_mi", "model": {..}, "with_class": bool}   I(A; V - A)
SetFunction parse_oracle(std::string_view json);
SetFunction load_oracle(const std::filesystem::path& path);
// Explicit-table form of any oracle with n <= 16.
std::string oracle_to_json(const SetFunction& f);

// {"n": int, "edges": [[u, v], ..]}.
TreeStructure parse_tree(std::string_view json);
std::string tree_to_json(const TreeStructure& tree);
TreeStructure load_tree(const std::filesystem::path& path);
void save_tree(const TreeStructure& tree, const std::filesystem::path& path);

// A JSON array of n reals.
std::string modular_to_json(const ModularWeights& h);

// Full per-class parameter tables of a fitted classifier.
std::string classifier_to_json(const TreeClassifier& classifier);

}  // namespace subsup::harness
