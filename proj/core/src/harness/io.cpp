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

#include "subsup/harness/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "subsup/error.hpp"

namespace subsup::harness {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw ValidationError(ErrorKind::kMalformedFile, (path.empty() ? std::string("/") : path) + ": " + what);
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(ErrorKind::kMalformedFile, std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) malformed(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) malformed(path + "/" + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) malformed(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) malformed(path, "expected an integer");
  return j.get<int>();
}

std::vector<double> number_array(const json& j, const std::string& path) {
  if (!j.is_array()) malformed(path, "expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
  return out;
}

Eigen::MatrixXd matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) malformed(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_path = path + "/" + std::to_string(r);
    const auto row = number_array(j[static_cast<std::size_t>(r)], row_path);
    if (static_cast<Eigen::Index>(row.size()) != rows) {
      malformed(row_path, "expected " + std::to_string(rows) + " entries for a square matrix");
    }
    for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ClassModel model_from_json(const json& j, const std::string& path) {
  const json& type = field(j, "type", path);
  if (!type.is_string()) malformed(path + "/type", "expected a string");
  const int n = integer(field(j, "n", path), path + "/n");
  const auto priors = number_array(field(j, "class_priors", path), path + "/class_priors");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& l = j["labels"];
    if (!l.is_array()) malformed(path + "/labels", "expected an array of strings");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) malformed(path + "/labels/" + std::to_string(i), "expected a string");
      labels.push_back(l[i].get<std::string>());
    }
  }

  try {
    if (type == "discrete") {
      if (n < 1 || n > kMaxDiscreteVariables) malformed(path + "/n", "discrete models need 1 <= n <= 16");
      const json& t = field(j, "tables", path);
      if (!t.is_array()) malformed(path + "/tables", "expected an array of tables");
      std::vector<std::vector<double>> tables;
      for (std::size_t c = 0; c < t.size(); ++c) {
        const std::string table_path = path + "/tables/" + std::to_string(c);
        tables.push_back(number_array(t[c], table_path));
        if (tables.back().size() != (std::size_t{1} << n)) {
          malformed(table_path + " (class " + std::to_string(c + 1) + ")",
                    "expected " + std::to_string(std::size_t{1} << n) + " entries for n = " + std::to_string(n));
        }
      }
      return ClassModel::discrete(priors, std::move(tables), std::move(labels));
    }
    if (type == "gaussian") {
      const json& cv = field(j, "covariances", path);
      if (!cv.is_array()) malformed(path + "/covariances", "expected an array of matrices");
      std::vector<Eigen::MatrixXd> covs;
      for (std::size_t c = 0; c < cv.size(); ++c) {
        const std::string cov_path = path + "/covariances/" + std::to_string(c);
        covs.push_back(matrix(cv[c], cov_path));
        if (covs.back().rows() != n) malformed(cov_path, "expected an " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
      }
      return ClassModel::gaussian(priors, std::move(covs), std::move(labels));
    }
  } catch (const ValidationError& e) {
    // Model invariants report paths relative to the model object.
    if (path.empty() || e.kind() == ErrorKind::kMalformedFile) throw;
    throw ValidationError(e.kind(), path + e.what());
  }
  malformed(path + "/type", "expected \"discrete\" or \"gaussian\"");
}

json model_json(const ClassModel& model) {
  json j;
  j["n"] = model.size();
  j["class_priors"] = model.priors();
  if (!model.labels().empty()) j["labels"] = model.labels();
  if (model.is_discrete()) {
    j["type"] = "discrete";
    j["tables"] = model.as_discrete().tables;
  } else {
    j["type"] = "gaussian";
    json covs = json::array();
    for (const auto& cov : model.as_gaussian().covariances) covs.push_back(matrix_json(cov));
    j["covariances"] = std::move(covs);
  }
  return j;
}

std::vector<std::vector<double>> weight_rows(const json& j, const std::string& path) {
  const Eigen::MatrixXd m = matrix(j, path);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows[static_cast<std::size_t>(r)].push_back(m(r, c));
  return rows;
}

SetFunction oracle_from_json(const json& j) {
  if (j.is_array()) return modular_function(number_array(j, ""));
  if (!j.is_object()) malformed("", "expected an oracle object or a weight array");
  const std::string type = j.contains("type") ? j["type"].get<std::string>() : std::string("table");
  if (type == "table") {
    const int n = integer(field(j, "n", ""), "/n");
    if (n < 1 || n > 16) malformed("/n", "explicit tables need 1 <= n <= 16");
    auto values = number_array(field(j, "values", ""), "/values");
    if (values.size() != (std::size_t{1} << n)) {
      malformed("/values", "expected " + std::to_string(std::size_t{1} << n) + " values for n = " + std::to_string(n));
    }
    return table_function(n, std::move(values));
  }
  if (type == "modular") return modular_function(number_array(field(j, "weights", ""), "/weights"));
  if (type == "cut") return cut_function(weight_rows(field(j, "weights", ""), "/weights"));
  if (type == "gaussian_entropy") {
    const Eigen::MatrixXd cov = matrix(field(j, "covariance", ""), "/covariance");
    // Validates symmetry and positive definiteness.
    ClassModel::gaussian({1.0}, {cov});
    const int n = static_cast<int>(cov.rows());
    return SetFunction(GroundSet(n), [cov](Subset s) { return gaussian_entropy_of(cov, s); });
  }
  if (type == "model_entropy" || type == "model_mi") {
    const ClassModel model = model_from_json(field(j, "model", ""), "/model");
    if (type == "model_mi") {
      bool with_class = false;
      if (j.contains("with_class")) {
        if (!j["with_class"].is_boolean()) malformed("/with_class", "expected a boolean");
        with_class = j["with_class"].get<bool>();
      }
      return symmetric_mi_oracle(model, with_class);
    }
    const std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : std::string("mixture");
    if (kind == "mixture") return entropy_oracle(model, EntropyKind::kMixture);
    if (kind == "class_conditional") return entropy_oracle(model, EntropyKind::kClassConditional);
    if (kind == "class") {
      return entropy_oracle(model, EntropyKind::kSingleClass, integer(field(j, "class", ""), "/class"));
    }
    malformed("/kind", "expected \"mixture\", \"class_conditional\" or \"class\"");
  }
  malformed("/type", "unknown oracle type \"" + type + "\"");
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(ErrorKind::kMalformedFile, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError(ErrorKind::kMalformedFile, "cannot write " + path.string());
  out << text;
  if (!out) throw ValidationError(ErrorKind::kMalformedFile, "write failed for " + path.string());
}

ClassModel parse_model(std::string_view text) { return model_from_json(parse_json(text), ""); }

std::string model_to_json(const ClassModel& model) { return canonical(model_json(model)); }

ClassModel load_model(const std::filesystem::path& path) { return parse_model(read_text_file(path)); }

void save_model(const ClassModel& model, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(model));
}

SetFunction parse_oracle(std::string_view text) {
  const json j = parse_json(text);
  try {
    return oracle_from_json(j);
  } catch (const json::exception& e) {
    throw ValidationError(ErrorKind::kMalformedFile, std::string("oracle file: ") + e.what());
  }
}

SetFunction load_oracle(const std::filesystem::path& path) { return parse_oracle(read_text_file(path)); }

std::string oracle_to_json(const SetFunction& f) {
  if (f.size() > 16) throw ValidationError(ErrorKind::kGroundSetTooLarge, "explicit tables need n <= 16");
  json j;
  j["n"] = f.size();
  j["values"] = value_table(f);
  return canonical(j);
}

TreeStructure parse_tree(std::string_view text) {
  const json j = parse_json(text);
  const int n = integer(field(j, "n", ""), "/n");
  const json& e = field(j, "edges", "");
  if (!e.is_array()) malformed("/edges", "expected an array of pairs");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string path = "/edges/" + std::to_string(i);
    if (!e[i].is_array() || e[i].size() != 2) malformed(path, "expected a pair [u, v]");
    edges.emplace_back(integer(e[i][0], path + "/0"), integer(e[i][1], path + "/1"));
  }
  return TreeStructure(n, std::move(edges));
}

std::string tree_to_json(const TreeStructure& tree) {
  json j;
  j["n"] = tree.size();
  json edges = json::array();
  for (const auto& [u, v] : tree.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return canonical(j);
}

TreeStructure load_tree(const std::filesystem::path& path) { return parse_tree(read_text_file(path)); }

void save_tree(const TreeStructure& tree, const std::filesystem::path& path) {
  write_text_file(path, tree_to_json(tree));
}

std::string modular_to_json(const ModularWeights& h) {
  return canonical(json(std::vector<double>(h.weights().begin(), h.weights().end())));
}

std::string classifier_to_json(const TreeClassifier& classifier) {
  json j;
  j["n"] = classifier.size();
  j["type"] = classifier.is_discrete() ? "discrete" : "gaussian";
  j["class_priors"] = classifier.priors();
  json edges = json::array();
  for (const auto& [u, v] : classifier.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  json classes = json::array();
  for (int c = 0; c < classifier.class_count(); ++c) {
    json entry;
    if (classifier.is_discrete()) {
      json vertex = json::array();
      for (const auto& m : classifier.vertex_marginals()[static_cast<std::size_t>(c)]) vertex.push_back({m[0], m[1]});
      json pair = json::array();
      for (const auto& m : classifier.edge_marginals()[static_cast<std::size_t>(c)]) {
        pair.push_back({m[0], m[1], m[2], m[3]});
      }
      entry["vertex_marginals"] = std::move(vertex);
      entry["edge_marginals"] = std::move(pair);
    } else {
      entry["precision"] = matrix_json(classifier.precisions()[static_cast<std::size_t>(c)]);
    }
    classes.push_back(std::move(entry));
  }
  j["classes"] = std::move(classes);
  return canonical(j);
}

}  // namespace subsup::harness
