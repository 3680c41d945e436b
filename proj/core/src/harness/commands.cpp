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

#include "subsup/harness/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "subsup/error.hpp"
#include "subsup/harness/fixtures.hpp"
#include "subsup/harness/io.hpp"
#include "subsup/random.hpp"

namespace subsup::harness {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string pad(std::string s, std::size_t width, bool left = true) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string edge_list(const TreeStructure& tree, const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& [u, v] : tree.edges()) {
    if (!out.empty()) out += ' ';
    out += labels.empty() ? std::to_string(u) + "-" + std::to_string(v)
                          : labels[static_cast<std::size_t>(u)] + "-" + labels[static_cast<std::size_t>(v)];
  }
  return out;
}

// Times `run` and records its error.
template <class Fn>
void timed(ReportCell& cell, const std::string& method, Fn&& run) {
  const auto start = Clock::now();
  const double error = run();
  cell.methods.push_back({method, error, seconds_since(start)});
}

}  // namespace

std::vector<std::string> RunReport::methods() const {
  std::vector<std::string> out;
  for (const auto& cell : cells)
    for (const auto& m : cell.methods)
      if (std::find(out.begin(), out.end(), m.method) == out.end()) out.push_back(m.method);
  return out;
}

std::vector<int> RunReport::sizes() const {
  std::vector<int> out;
  for (const auto& cell : cells)
    if (std::find(out.begin(), out.end(), cell.n) == out.end()) out.push_back(cell.n);
  std::sort(out.begin(), out.end());
  return out;
}

double RunReport::mean_error(const std::string& method, int n) const {
  double sum = 0.0;
  int count = 0;
  for (const auto& cell : cells) {
    if (n >= 0 && cell.n != n) continue;
    for (const auto& m : cell.methods) {
      if (m.method == method) {
        sum += m.error;
        ++count;
      }
    }
  }
  if (count == 0) throw ValidationError(ErrorKind::kInvalidArgument, "no results for method '" + method + "'");
  return sum / count;
}

std::string truncate_decimal(double value, int digits) {
  if (!std::isfinite(value)) return std::to_string(value);
  const double scale = std::pow(10.0, digits);
  const double magnitude = std::floor(std::abs(value) * scale + 1e-9);
  return (value < 0 && magnitude > 0 ? "-" : "") + fixed(magnitude / scale, digits);
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << command << "\n";
  for (const auto& [key, value] : config) os << "  " << key << ": " << value << "\n";
  const auto names = methods();
  std::size_t width = 16;
  for (const auto& name : names) width = std::max(width, name.size() + 2);

  if (cells.size() == 1) {
    os << "\n" << pad("Method", width) << pad("Error", 8, false) << pad("Seconds", 12, false) << "\n";
    for (const auto& m : cells.front().methods) {
      os << pad(m.method, width) << pad(truncate_decimal(m.error), 8, false) << pad(fixed(m.seconds, 4), 12, false)
         << "\n";
    }
  } else {
    const auto ns = sizes();
    os << "\nMean error over seeds\n" << pad("Method", width);
    for (int n : ns) os << pad("n=" + std::to_string(n), 8, false);
    os << pad("all", 8, false) << "\n";
    for (const auto& name : names) {
      os << pad(name, width);
      for (int n : ns) os << pad(truncate_decimal(mean_error(name, n)), 8, false);
      os << pad(truncate_decimal(mean_error(name)), 8, false) << "\n";
    }
    os << pad("Seconds/run", width);
    for (int n : ns) {
      double sum = 0.0;
      int count = 0;
      for (const auto& cell : cells) {
        if (cell.n == n) {
          sum += cell.seconds;
          ++count;
        }
      }
      os << pad(fixed(sum / count, 2), 8, false);
    }
    os << "\n";
  }
  os << "\nTotal wall time: " << fixed(seconds, 3) << " s\n";
  return os.str();
}

std::string RunReport::to_json(bool include_timings) const {
  json j;
  j["command"] = command;
  json cfg = json::object();
  for (const auto& [key, value] : config) cfg[key] = value;
  j["config"] = std::move(cfg);
  json cell_list = json::array();
  for (const auto& cell : cells) {
    json c;
    c["n"] = cell.n;
    c["seed"] = cell.seed;
    json errors = json::object();
    json times = json::object();
    for (const auto& m : cell.methods) {
      errors[m.method] = m.error;
      times[m.method] = m.seconds;
    }
    c["errors"] = std::move(errors);
    if (include_timings) {
      c["seconds"] = std::move(times);
      c["cell_seconds"] = cell.seconds;
    }
    cell_list.push_back(std::move(c));
  }
  j["cells"] = std::move(cell_list);
  json summary = json::object();
  for (const auto& name : methods()) {
    json per_n = json::object();
    for (int n : sizes()) per_n[std::to_string(n)] = mean_error(name, n);
    per_n["all"] = mean_error(name);
    summary[name] = std::move(per_n);
  }
  j["mean_errors"] = std::move(summary);
  if (include_timings) j["seconds"] = seconds;
  return j.dump(2) + "\n";
}

RunReport repro_table2(const DiscriminativeTreeOptions& options) {
  const auto start = Clock::now();
  const ClassModel model = parse_model(table1_corrected_json());
  const ErrorEvaluation exact{ErrorMethod::kExact, 0, 0};

  RunReport report;
  report.command = "repro table2";
  ReportCell cell;
  cell.n = model.size();

  timed(cell, "Complete", [&] { return evaluate_error(model, FullModelClassifier(model), exact); });
  const TreeStructure generative = chow_liu_tree(mi_edge_weights(model, EdgeWeightVariant::kMarginalMi));
  timed(cell, "Generative", [&] { return evaluate_error(model, fit_tree_classifier(model, generative), exact); });
  TreeStructure discriminative(2, {{0, 1}});
  timed(cell, "Discriminative", [&] {
    discriminative = make_discriminative_tree(model, options);
    return evaluate_error(model, fit_tree_classifier(model, discriminative), exact);
  });
  timed(cell, "Naive Bayes", [&] { return evaluate_error(model, naive_bayes_classifier(model), exact); });

  cell.seconds = seconds_since(start);
  report.config = {{"model", "table1_corrected"},
                   {"evaluation", "exact"},
                   {"ear_sign", to_string(options.sign)},
                   {"generative_tree", edge_list(generative, model.labels())},
                   {"discriminative_tree", edge_list(discriminative, model.labels())}};
  report.cells.push_back(std::move(cell));
  report.seconds = seconds_since(start);
  return report;
}

ReportCell table3_cell(int n, std::uint64_t seed, const Table3Options& options) {
  const auto start = Clock::now();
  SynthSpec spec = options.synth;
  spec.n = n;
  spec.seed = seed;
  const ClassModel truth = make_synthetic_model(spec);
  const std::uint64_t cell_seed = Rng::derive(seed, static_cast<std::uint64_t>(n));
  const LabeledSamples train = draw_samples(truth, options.train_samples, Rng::derive(cell_seed, 1));
  const LabeledSamples test = draw_samples(truth, options.test_samples, Rng::derive(cell_seed, 2));
  const ClassModel estimated = estimate_gaussian_model(train, truth.priors());

  ReportCell cell;
  cell.n = n;
  cell.seed = seed;
  timed(cell, "Complete", [&] { return empirical_error(FullModelClassifier(estimated), test); });
  timed(cell, "Discriminative", [&] {
    DiscriminativeTreeOptions tree = options.tree;
    tree.ssp.seed = Rng::derive(cell_seed, 3);
    return empirical_error(fit_tree_classifier(estimated, make_discriminative_tree(estimated, tree)), test);
  });
  timed(cell, "Generative", [&] {
    const auto tree = chow_liu_tree(mi_edge_weights(estimated, EdgeWeightVariant::kConditionalMi));
    return empirical_error(fit_tree_classifier(estimated, tree), test);
  });
  timed(cell, "Naive Bayes", [&] { return empirical_error(naive_bayes_classifier(estimated), test); });

  const auto random_start = Clock::now();
  double best = 1.0;
  double sum = 0.0;
  for (int t = 0; t < n; ++t) {
    const auto tree = random_tree(n, Rng::derive(cell_seed, 100 + static_cast<std::uint64_t>(t)));
    const double e = empirical_error(fit_tree_classifier(estimated, tree), test);
    best = std::min(best, e);
    sum += e;
  }
  const double random_seconds = seconds_since(random_start);
  cell.methods.push_back({"Best Random", best, random_seconds});
  cell.methods.push_back({"Average Random", sum / n, random_seconds});
  cell.seconds = seconds_since(start);
  return cell;
}

RunReport table3(const Table3Options& options) {
  if (options.sizes.empty() || options.seeds < 1) {
    throw ValidationError(ErrorKind::kInvalidArgument, "table3 needs at least one size and one seed");
  }
  if (options.train_samples == 0 || options.test_samples == 0) {
    throw ValidationError(ErrorKind::kInvalidArgument, "table3 needs positive sample counts");
  }
  options.tree.ssp.validate();
  const auto start = Clock::now();

  std::vector<std::pair<int, std::uint64_t>> jobs;
  for (int n : options.sizes)
    for (int s = 0; s < options.seeds; ++s) jobs.emplace_back(n, options.base_seed + static_cast<std::uint64_t>(s));

  std::size_t parallel = options.jobs > 0 ? static_cast<std::size_t>(options.jobs)
                                          : std::max(1U, std::thread::hardware_concurrency());
  RunReport report;
  report.command = "repro table3";
  report.cells.resize(jobs.size());
  for (std::size_t begin = 0; begin < jobs.size(); begin += parallel) {
    const std::size_t end = std::min(jobs.size(), begin + parallel);
    std::vector<std::future<ReportCell>> running;
    for (std::size_t i = begin; i < end; ++i) {
      running.push_back(std::async(parallel > 1 ? std::launch::async : std::launch::deferred,
                                   [&, i] { return table3_cell(jobs[i].first, jobs[i].second, options); }));
    }
    for (std::size_t i = begin; i < end; ++i) report.cells[i] = running[i - begin].get();
  }

  std::string sizes;
  for (int n : options.sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(n);
  report.config = {{"sizes", sizes},
                   {"seeds", std::to_string(options.seeds)},
                   {"base_seed", std::to_string(options.base_seed)},
                   {"train_samples", std::to_string(options.train_samples)},
                   {"test_samples", std::to_string(options.test_samples)},
                   {"common_strength", fixed(options.synth.common_strength, 6)},
                   {"disc_strength", fixed(options.synth.disc_strength, 6)},
                   {"ear_sign", to_string(options.tree.sign)},
                   {"engine", to_string(options.tree.ssp.engine)}};
  report.seconds = seconds_since(start);
  return report;
}

FeatselReport featsel(const SetFunction& g, const SetFunction& c, const FeatselOptions& options) {
  if (!(options.k >= 0.0) || !std::isfinite(options.k)) {
    throw ValidationError(ErrorKind::kInvalidArgument, "featsel: k must be a finite value >= 0");
  }
  if (g.size() != c.size()) {
    throw ValidationError(ErrorKind::kGroundSetMismatch, "featsel: g has " + std::to_string(g.size()) +
                                                             " elements but c has " + std::to_string(c.size()));
  }
  const SetFunction cost = options.k * c;
  const SetFunction& first = options.maximize ? cost : g;
  const SetFunction& second = options.maximize ? g : cost;
  const SspResult ssp = ssp_minimize(first, second, options.ssp);
  const CertifyResult cert = local_search_certify(first, second, ssp.best.minimizer, 1, options.ssp);

  FeatselReport report;
  report.selected = cert.subset;
  report.information = g(cert.subset);
  report.cost = c(cert.subset);
  report.objective = report.information - options.k * report.cost;
  report.certified = cert.certified;
  if (!options.maximize && options.k == 0.0) {
    report.notes.push_back(
        "k = 0: minimizing g alone favours the smallest sets; --maximize selects informative features instead");
  }
  if (cert.improvements > 0) {
    report.notes.push_back("local search improved the SSP result " + std::to_string(cert.improvements) + " time(s)");
  }
  return report;
}

std::string FeatselReport::to_text(const GroundSet& ground) const {
  std::ostringstream os;
  os << "selected:";
  for (int x : selected.elements()) os << ' ' << ground.label(x);
  os << "\ninformation g(A): " << fixed(information, 9) << "\ncost c(A): " << fixed(cost, 9)
     << "\nobjective g(A) - k c(A): " << fixed(objective, 9)
     << "\n1-exchange optimal: " << (certified ? "yes" : "no") << "\n";
  for (const auto& note : notes) os << "note: " << note << "\n";
  return os.str();
}

std::string FeatselReport::to_json() const {
  json j;
  j["selected"] = selected.elements();
  j["subset_bitmask"] = selected.bits();
  j["information"] = information;
  j["cost"] = cost;
  j["objective"] = objective;
  j["certified"] = certified;
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

}  // namespace subsup::harness
