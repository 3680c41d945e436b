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

// Command-line front end: ssp, tree, eval, repro, synth and featsel.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subsup/error.hpp"
#include "subsup/harness/commands.hpp"
#include "subsup/harness/io.hpp"
#include "subsup/harness/synth.hpp"
#include "subsup/ssp.hpp"
#include "subsup/structlearn.hpp"

namespace {

using nlohmann::json;
using namespace subsup;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct SspFlags {
  double delta = 1e-9;
  std::uint64_t seed = 0;
  int restarts = 1;
  int local_search = 0;
  std::string engine = "minnorm";
  int max_iterations = 100;

  void add_to(CLI::App* app, bool with_local_search) {
    app->add_option("--delta", delta, "required improvement per step (nats)")->capture_default_str();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    app->add_option("--restarts", restarts, "independent random restarts")->capture_default_str();
    if (with_local_search) {
      app->add_option("--local-search", local_search, "exchange radius of the final certification")
          ->check(CLI::Range(0, 2))
          ->capture_default_str();
    }
    app->add_option("--engine", engine, "submodular minimizer")
        ->check(CLI::IsMember({"brute", "queyranne", "minnorm"}))
        ->capture_default_str();
    app->add_option("--max-iterations", max_iterations, "iteration cap per restart")->capture_default_str();
  }

  SspOptions options() const {
    SspOptions o;
    o.delta = delta;
    o.seed = seed;
    o.restarts = restarts;
    o.local_search_radius = local_search;
    o.engine = parse_engine(engine);
    o.max_iterations = max_iterations;
    o.validate();
    return o;
  }
};

// Writes `text` to `path`, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    harness::write_text_file(path, text);
  }
}

EdgeWeightMatrix parse_weights(const ClassModel& model, const std::string& spec) {
  if (spec == "mi") return mi_edge_weights(model, EdgeWeightVariant::kMarginalMi);
  if (spec == "cmi") return mi_edge_weights(model, EdgeWeightVariant::kConditionalMi);
  const std::string prefix = "classwise:";
  if (spec.rfind(prefix, 0) == 0) {
    int c = 0;
    try {
      c = std::stoi(spec.substr(prefix.size()));
    } catch (const std::exception&) {
      throw ValidationError(ErrorKind::kInvalidArgument, "--weights classwise:<c> needs an integer class");
    }
    return mi_edge_weights(model, EdgeWeightVariant::kClasswiseMi, c);
  }
  throw ValidationError(ErrorKind::kInvalidArgument, "--weights must be mi, cmi or classwise:<c>");
}

std::vector<int> parse_sizes(const std::string& list) {
  std::vector<int> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(ErrorKind::kInvalidArgument, "--n expects a comma-separated list of integers");
    }
  }
  if (out.empty()) throw ValidationError(ErrorKind::kInvalidArgument, "--n is empty");
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Difference-of-submodular minimization and discriminative tree learning"};
  app.require_subcommand(1);

  // ssp min
  auto* ssp_cmd = app.add_subcommand("ssp", "submodular-supermodular procedure");
  ssp_cmd->require_subcommand(1);
  auto* ssp_min = ssp_cmd->add_subcommand("min", "minimize f - g over proper non-empty subsets");
  std::string f_path, g_path, trace_path;
  SspFlags ssp_flags;
  ssp_min->add_option("--f", f_path, "oracle file for f")->required();
  ssp_min->add_option("--g", g_path, "oracle file for g")->required();
  ssp_min->add_option("--trace", trace_path, "write accepted iterates as JSON lines");
  ssp_flags.add_to(ssp_min, true);

  // tree chowliu | disc
  auto* tree_cmd = app.add_subcommand("tree", "learn a tree structure");
  tree_cmd->require_subcommand(1);
  std::string model_path, weights = "mi", tree_out, ear_sign = "consistent";
  auto* chowliu = tree_cmd->add_subcommand("chowliu", "maximum-weight spanning tree");
  chowliu->add_option("--model", model_path, "model file")->required();
  chowliu->add_option("--weights", weights, "mi, cmi or classwise:<c>")->capture_default_str();
  chowliu->add_option("--out", tree_out, "write the tree here instead of stdout");
  auto* disc = tree_cmd->add_subcommand("disc", "recursive discriminative tree");
  SspFlags disc_flags;
  disc->add_option("--model", model_path, "model file")->required();
  disc->add_option("--ear-sign", ear_sign, "partition objective convention")
      ->check(CLI::IsMember({"printed", "prose", "consistent"}))
      ->capture_default_str();
  disc->add_option("--out", tree_out, "write the tree here instead of stdout");
  disc_flags.add_to(disc, false);

  // eval
  auto* eval = app.add_subcommand("eval", "classification error of a tree classifier");
  std::string tree_path, method = "exact";
  std::size_t samples = 2000;
  std::uint64_t eval_seed = 0;
  eval->add_option("--model", model_path, "model file")->required();
  eval->add_option("--tree", tree_path, "tree file");
  eval->add_option("--method", method, "exact or mc")->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
  eval->add_option("--samples", samples, "Monte-Carlo sample count")->capture_default_str();
  eval->add_option("--seed", eval_seed, "Monte-Carlo seed")->capture_default_str();
  bool eval_full = false, eval_nb = false;
  eval->add_flag("--full", eval_full, "score the true model instead of a tree");
  eval->add_flag("--naive-bayes", eval_nb, "score the edgeless factorization");

  // repro table2 | table3
  auto* repro = app.add_subcommand("repro", "reproduce the benchmark tables");
  repro->require_subcommand(1);
  std::string json_out;
  bool timings = false;
  auto* table2 = repro->add_subcommand("table2", "exact errors on the three-variable example");
  table2->add_option("--ear-sign", ear_sign, "partition objective convention")
      ->check(CLI::IsMember({"printed", "prose", "consistent"}))
      ->capture_default_str();
  table2->add_option("--json", json_out, "write the machine-readable report here");
  auto* table3 = repro->add_subcommand("table3", "synthetic Gaussian benchmark");
  std::string sizes = "6,7,8,9,10";
  harness::Table3Options t3;
  table3->add_option("--n", sizes, "comma-separated model sizes")->capture_default_str();
  table3->add_option("--seeds", t3.seeds, "seeds per size")->capture_default_str();
  table3->add_option("--base-seed", t3.base_seed, "first seed")->capture_default_str();
  table3->add_option("--train", t3.train_samples, "training samples per cell")->capture_default_str();
  table3->add_option("--test", t3.test_samples, "test samples per cell")->capture_default_str();
  table3->add_option("--disc-strength", t3.synth.disc_strength, "class-specific coupling")->capture_default_str();
  table3->add_option("--common-strength", t3.synth.common_strength, "shared chain coupling")->capture_default_str();
  table3->add_option("--jobs", t3.jobs, "concurrent cells (0: hardware)")->capture_default_str();
  table3->add_option("--json", json_out, "write the machine-readable report here");
  table3->add_flag("--timings", timings, "include wall times in the JSON report");

  // synth
  auto* synth = app.add_subcommand("synth", "write a synthetic two-class Gaussian model");
  harness::SynthSpec spec;
  std::string synth_out;
  bool no_relabel = false;
  synth->add_option("--n", spec.n, "variables")->required();
  synth->add_option("--seed", spec.seed, "relabelling seed")->capture_default_str();
  synth->add_option("--common-strength", spec.common_strength, "shared chain coupling")->capture_default_str();
  synth->add_option("--disc-strength", spec.disc_strength, "class-specific coupling")->capture_default_str();
  synth->add_option("--source", spec.source, "source of the class-specific coupling")->capture_default_str();
  synth->add_option("--target", spec.target, "target of the class-specific coupling")->capture_default_str();
  synth->add_option("--diagonal-load", spec.diagonal_load, "ridge added before rescaling")->capture_default_str();
  synth->add_flag("--no-relabel", no_relabel, "keep the chain order");
  synth->add_option("--out", synth_out, "output model file")->required();

  // featsel
  auto* fs = app.add_subcommand("featsel", "choose features minimizing g - k c");
  std::string c_path;
  harness::FeatselOptions fs_opts;
  SspFlags fs_flags;
  fs->add_option("--g", g_path, "information oracle file")->required();
  fs->add_option("--c", c_path, "cost oracle file")->required();
  fs->add_option("--k", fs_opts.k, "cost weight, >= 0")->required();
  fs->add_flag("--maximize", fs_opts.maximize, "maximize g - k c instead");
  fs->add_option("--json", json_out, "write the machine-readable report here");
  fs_flags.add_to(fs, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (ssp_min->parsed()) {
    const SetFunction f = harness::load_oracle(f_path);
    const SetFunction g = harness::load_oracle(g_path);
    const SspResult result = ssp_minimize(f, g, ssp_flags.options());
    if (!trace_path.empty()) {
      std::ofstream out(trace_path);
      if (!out) throw ValidationError(ErrorKind::kMalformedFile, "cannot write " + trace_path);
      write_trace_jsonl(out, result.trace);
    }
    json j;
    j["subset"] = result.best.minimizer.elements();
    j["subset_bitmask"] = result.best.minimizer.bits();
    j["objective"] = result.best.value;
    j["certified"] = result.certified;
    j["improvement_rounds"] = result.trace.improvement_rounds;
    std::vector<std::string> terminated;
    for (auto t : result.trace.terminated_by) terminated.emplace_back(to_string(t));
    j["terminated_by"] = terminated;
    std::cout << j.dump(2) << "\n";
  } else if (chowliu->parsed()) {
    const ClassModel model = harness::load_model(model_path);
    emit(tree_out, harness::tree_to_json(chow_liu_tree(parse_weights(model, weights))));
  } else if (disc->parsed()) {
    const ClassModel model = harness::load_model(model_path);
    DiscriminativeTreeOptions options;
    options.ssp = disc_flags.options();
    options.sign = parse_ear_sign(ear_sign);
    emit(tree_out, harness::tree_to_json(make_discriminative_tree(model, options)));
  } else if (eval->parsed()) {
    const ClassModel model = harness::load_model(model_path);
    const ErrorEvaluation how{method == "exact" ? ErrorMethod::kExact : ErrorMethod::kMonteCarlo, samples, eval_seed};
    double error = 0.0;
    if (eval_full) {
      error = evaluate_error(model, FullModelClassifier(model), how);
    } else if (eval_nb) {
      error = evaluate_error(model, naive_bayes_classifier(model), how);
    } else {
      if (tree_path.empty()) throw ValidationError(ErrorKind::kInvalidArgument, "eval needs --tree, --full or --naive-bayes");
      error = evaluate_error(model, fit_tree_classifier(model, harness::load_tree(tree_path)), how);
    }
    json j;
    j["error"] = error;
    j["method"] = method;
    if (method == "mc") {
      j["samples"] = samples;
      j["seed"] = eval_seed;
    }
    std::cout << j.dump(2) << "\n";
  } else if (table2->parsed()) {
    DiscriminativeTreeOptions options;
    options.sign = parse_ear_sign(ear_sign);
    const auto report = harness::repro_table2(options);
    std::cout << report.to_text();
    if (!json_out.empty()) harness::write_text_file(json_out, report.to_json());
  } else if (table3->parsed()) {
    t3.sizes = parse_sizes(sizes);
    const auto report = harness::table3(t3);
    std::cout << report.to_text();
    if (!json_out.empty()) harness::write_text_file(json_out, report.to_json(timings));
  } else if (synth->parsed()) {
    spec.relabel = !no_relabel;
    harness::save_model(harness::make_synthetic_model(spec), synth_out);
  } else if (fs->parsed()) {
    const SetFunction g = harness::load_oracle(g_path);
    const SetFunction c = harness::load_oracle(c_path);
    fs_opts.ssp = fs_flags.options();
    const auto report = harness::featsel(g, c, fs_opts);
    std::cout << report.to_text(g.ground());
    if (!json_out.empty()) harness::write_text_file(json_out, report.to_json());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const subsup::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const subsup::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
