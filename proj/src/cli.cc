//
// Copyright 2026 The dpkmedian Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpkm/cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dpkm/cover.h"
#include "dpkm/dataset_io.h"
#include "dpkm/errors.h"
#include "dpkm/kmedian.h"
#include "dpkm/mechanisms.h"
#include "dpkm/pipeline.h"
#include "dpkm/random.h"
#include "dpkm/report.h"

namespace dpkm {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kMaxCoverPoints = 2e6;
constexpr std::size_t kMechanismDraws = 100000;
constexpr std::size_t kCountRepetitions = 10000;
// 0.99 quantile of chi-square with 3 degrees of freedom.
constexpr double kChiSquare3Df99 = 11.344866730144373;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void ValidateSpec(const RunSpec& spec) {
  if (spec.k == 0) throw InvalidArgumentError("--k must be >= 1");
  if (!(spec.eps > 0.0 && spec.eps <= 0.5)) throw InvalidArgumentError("--eps must lie in (0, 1/2]");
  if (!std::isfinite(spec.eps_p) || !(spec.eps_p > 0.0)) {
    throw InvalidArgumentError("--eps-p must be positive");
  }
  if (!(spec.delta_p >= 0.0 && spec.delta_p < 1.0)) {
    throw InvalidArgumentError("--delta-p must lie in [0, 1)");
  }
  if (spec.repeats == 0) throw InvalidArgumentError("--repeats must be >= 1");
  if (spec.d_prime && *spec.d_prime == 0) throw InvalidArgumentError("--d-prime must be >= 1");
  if (spec.subcommand != Subcommand::kMechanisms && spec.input.empty()) {
    throw InvalidArgumentError("--input is required for " +
                               std::string(SubcommandName(spec.subcommand)));
  }
}

json InputsToJson(const RunSpec& spec) {
  return {{"subcommand", SubcommandName(spec.subcommand)},
          {"input", spec.input},
          {"k", spec.k},
          {"eps", spec.eps},
          {"eps_p", spec.eps_p},
          {"delta_p", spec.delta_p},
          {"seed", spec.seed},
          {"repeats", spec.repeats},
          {"normalize", spec.normalize},
          {"d_prime", spec.d_prime ? json(*spec.d_prime) : json(nullptr)},
          {"budget_split", spec.budget_split}};
}

json DatasetToJson(const LoadedDataset& loaded) {
  return {{"n", loaded.data.size()},
          {"dim", loaded.data.dim()},
          {"total_weight", loaded.data.TotalWeight()},
          {"weighted", loaded.weighted},
          {"normalization",
           {{"applied", loaded.normalized},
            {"shift", loaded.map.shift},
            {"scale", loaded.map.scale}}}};
}

CenterSet ToOriginal(const CenterSet& centers, const AffineMap& map) {
  CenterSet out(centers.dim());
  for (const Point& c : centers.centers()) out.Add(map.ToOriginal(c));
  return out;
}

// Reference solution for the cover check: exact when small enough.
SolverResult ReferenceSolution(const Dataset& data, std::size_t k, std::string& method) {
  if (k >= data.size() || (data.size() <= 12 && k <= 3)) {
    method = "exact_kmedian_oracle";
    return ExactKMedianOracle(data, k);
  }
  method = "local_search";
  return LocalSearchKMedian(data, k, CenterSet(data.points()));
}

json RunCoverCheck(const RunSpec& spec, const LoadedDataset& loaded) {
  const Dataset& data = loaded.data;
  std::string method;
  const SolverResult reference = ReferenceSolution(data, spec.k, method);
  const double R = reference.cost / data.TotalWeight();
  const ThresholdSet thresholds = BuildThresholds(R, spec.eps, data.size());
  const double size_bound =
      ThresholdCoverSizeBound(reference.centers.size(), thresholds.size(), data.dim(), spec.eps);
  if (size_bound > kMaxCoverPoints) {
    throw InvalidArgumentError("cover-check: the lattice cover would have up to " +
                               std::to_string(size_bound) + " centers; reduce the dimension");
  }
  const CenterSet cover = ThresholdCover(reference.centers, R, spec.eps, data.size());
  const CoverReport report = VerifyCoverBound(data, reference.centers, cover, spec.eps);
  json out = CoverReportToJson(report);
  out["reference"] = {{"method", method},
                      {"cost", reference.cost},
                      {"centers", CentersToJson(reference.centers)}};
  out["R"] = R;
  out["thresholds"] = thresholds.thresholds;
  out["size_bound"] = size_bound;
  return out;
}

json RunPipelines(const RunSpec& spec, const LoadedDataset& loaded) {
  PipelineConfig config;
  config.k = spec.k;
  config.eps = spec.eps;
  config.d_prime_override = spec.d_prime;
  config.budget_split = spec.budget_split;
  config.max_bicriteria_centers = std::max(config.max_bicriteria_centers, spec.k);
  const PrivacyBudget budget{spec.eps_p, spec.delta_p};

  json runs = json::array();
  for (std::size_t r = 0; r < spec.repeats; ++r) {
    SeededRng rng(spec.seed + r);
    const PipelineResult result = RunPipeline(loaded.data, config, budget, rng);
    const CenterSet original = ToOriginal(result.centers, loaded.map);
    runs.push_back({{"seed", spec.seed + r},
                    {"centers", CentersToJson(original)},
                    {"final_cost", Cost(loaded.original, original)},
                    {"report", PipelineReportToJson(result.report)}});
  }
  return runs;
}

json RunOracle(const RunSpec& spec, const LoadedDataset& loaded) {
  const Dataset& data = loaded.data;
  const CenterSet candidates(data.points());
  json out;
  const auto describe = [&](const SolverResult& s) {
    const CenterSet original = ToOriginal(s.centers, loaded.map);
    return json{{"cost", Cost(loaded.original, original)},
                {"centers", CentersToJson(original)},
                {"iterations", s.iterations},
                {"converged", s.converged}};
  };
  double discrete_cost = NAN;
  try {
    out["exact_continuous"] = describe(ExactKMedianOracle(data, spec.k));
  } catch (const InvalidArgumentError& e) {
    out["exact_continuous"] = {{"skipped", e.what()}};
  }
  try {
    const SolverResult discrete = ExactDiscreteKMedian(data, candidates, spec.k);
    out["exact_discrete"] = describe(discrete);
    discrete_cost = out["exact_discrete"]["cost"].get<double>();
  } catch (const InvalidArgumentError& e) {
    out["exact_discrete"] = {{"skipped", e.what()}};
  }
  const json local = describe(LocalSearchKMedian(data, spec.k, candidates));
  out["local_search"] = local;
  if (!std::isnan(discrete_cost)) {
    out["local_over_discrete"] =
        discrete_cost > 0.0 ? json(local["cost"].get<double>() / discrete_cost) : json(nullptr);
  }
  return out;
}

json RunMechanisms(const RunSpec& spec) {
  SeededRng rng(spec.seed);
  json out;

  {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < kMechanismDraws; ++i) {
      const double x = LaplaceSample(1.0, rng);
      sum += x;
      sum_sq += x * x;
    }
    const double n = static_cast<double>(kMechanismDraws);
    const double mean = sum / n;
    const double variance = sum_sq / n - mean * mean;
    const double rel = std::abs(variance - 2.0) / 2.0;
    out["laplace"] = {{"scale", 1.0},   {"draws", kMechanismDraws},
                      {"mean", mean},   {"variance", variance},
                      {"expected_variance", 2.0}, {"variance_rel_error", rel},
                      {"passed", std::abs(mean) <= 0.02 && rel <= 0.05}};
  }
  {
    // Score gap chosen so the expected log-odds is 1 at any eps.
    const double gap = 2.0 / spec.eps_p;
    const std::vector<double> scores = {0.0, gap};
    std::size_t high = 0;
    for (std::size_t i = 0; i < kMechanismDraws; ++i) {
      high += ExponentialMechanism(scores, 1.0, spec.eps_p, rng);
    }
    const double low = static_cast<double>(kMechanismDraws - high);
    const double log_odds = std::log(static_cast<double>(high) / low);
    const double expected = spec.eps_p * gap / 2.0;
    const double rel = std::abs(log_odds - expected) / expected;
    out["exponential"] = {{"scores", scores},         {"sensitivity", 1.0},
                          {"eps", spec.eps_p},        {"draws", kMechanismDraws},
                          {"log_odds", log_odds},     {"expected_log_odds", expected},
                          {"rel_error", rel},         {"passed", rel <= 0.1}};
  }
  {
    const std::vector<double> scores = {3.0, -1.0, 0.5, 7.0};
    std::vector<double> hits(scores.size(), 0.0);
    for (std::size_t i = 0; i < kMechanismDraws; ++i) {
      hits[ExponentialMechanism(scores, 1.0, 0.0, rng)] += 1.0;
    }
    const double expected = static_cast<double>(kMechanismDraws) / static_cast<double>(scores.size());
    double chi_square = 0.0;
    for (double h : hits) chi_square += (h - expected) * (h - expected) / expected;
    out["uniform_at_zero_eps"] = {{"candidates", scores.size()},
                                  {"draws", kMechanismDraws},
                                  {"chi_square", chi_square},
                                  {"critical_0_01", kChiSquare3Df99},
                                  {"passed", chi_square <= kChiSquare3Df99}};
  }
  {
    const std::vector<double> counts = {100.0};
    const double width = 3.0 / spec.eps_p;
    double sum = 0.0;
    std::size_t within = 0;
    for (std::size_t i = 0; i < kCountRepetitions; ++i) {
      const double v = static_cast<double>(NoisyCounts(counts, spec.eps_p, rng)[0]);
      sum += v;
      if (std::abs(v - 100.0) <= width) ++within;
    }
    out["noisy_counts"] = {
        {"count", 100.0},
        {"eps", spec.eps_p},
        {"repetitions", kCountRepetitions},
        {"mean", sum / static_cast<double>(kCountRepetitions)},
        {"within_3_over_eps", static_cast<double>(within) / static_cast<double>(kCountRepetitions)}};
  }
  out["rng_draws"] = rng.draws();
  return out;
}

json RunBench(const RunSpec& spec, const LoadedDataset& loaded) {
  PipelineConfig config;
  config.k = spec.k;
  config.eps = spec.eps;
  config.d_prime_override = spec.d_prime;
  config.budget_split = spec.budget_split;
  config.max_bicriteria_centers = std::max(config.max_bicriteria_centers, spec.k);
  const PrivacyBudget budget{spec.eps_p, spec.delta_p};

  const Dataset& data = loaded.data;
  const SolverResult baseline = LocalSearchKMedian(data, spec.k, CenterSet(data.points()));
  const Point one_median = GeometricMedian(data.points(), data.weights());
  const double baseline_cost = Cost(loaded.original, ToOriginal(baseline.centers, loaded.map));
  const double single_cost =
      Cost(loaded.original, CenterSet({loaded.map.ToOriginal(one_median)}));

  // Cells are independent; each owns its RNG and results are gathered in seed
  // order.
  std::vector<std::future<json>> cells;
  for (std::size_t r = 0; r < spec.repeats; ++r) {
    cells.push_back(std::async(std::launch::async, [&, r] {
      const auto start = Clock::now();
      SeededRng rng(spec.seed + r);
      const PipelineResult result = RunPipeline(data, config, budget, rng);
      const double cost = Cost(loaded.original, ToOriginal(result.centers, loaded.map));
      return json{{"seed", spec.seed + r},
                  {"final_cost", cost},
                  {"ratio_to_baseline", baseline_cost > 0.0 ? json(cost / baseline_cost) : json(nullptr)},
                  {"beats_single_center", cost < single_cost},
                  {"within_declared_budget", result.report.ledger.Fits(budget)},
                  {kWallClockKey, SecondsSince(start)}};
    }));
  }
  json rows = json::array();
  std::size_t within_3x = 0;
  std::size_t beats = 0;
  for (auto& cell : cells) {
    json row = cell.get();
    if (row["ratio_to_baseline"].is_number() && row["ratio_to_baseline"].get<double>() <= 3.0) {
      ++within_3x;
    }
    if (row["beats_single_center"].get<bool>()) ++beats;
    rows.push_back(std::move(row));
  }
  const double reps = static_cast<double>(spec.repeats);
  return {{"baseline_local_search_cost", baseline_cost},
          {"single_center_cost", single_cost},
          {"cells", std::move(rows)},
          {"fraction_within_3x", static_cast<double>(within_3x) / reps},
          {"fraction_beating_single_center", static_cast<double>(beats) / reps}};
}

}  // namespace

const char* SubcommandName(Subcommand s) {
  switch (s) {
    case Subcommand::kCoverCheck:
      return "cover-check";
    case Subcommand::kPipeline:
      return "pipeline";
    case Subcommand::kOracle:
      return "oracle";
    case Subcommand::kMechanisms:
      return "mechanisms";
    case Subcommand::kBench:
      return "bench";
  }
  return "unknown";
}

json BuildReport(const RunSpec& spec) {
  ValidateSpec(spec);
  const auto start = Clock::now();
  json report;
  report["inputs"] = InputsToJson(spec);

  if (spec.subcommand == Subcommand::kMechanisms) {
    report["mechanisms"] = RunMechanisms(spec);
  } else {
    const LoadedDataset loaded = LoadDataset(spec.input, spec.normalize);
    report["dataset"] = DatasetToJson(loaded);
    switch (spec.subcommand) {
      case Subcommand::kCoverCheck:
        report["cover"] = RunCoverCheck(spec, loaded);
        break;
      case Subcommand::kPipeline:
        report["runs"] = RunPipelines(spec, loaded);
        break;
      case Subcommand::kOracle:
        report["oracle"] = RunOracle(spec, loaded);
        break;
      case Subcommand::kBench:
        report["bench"] = RunBench(spec, loaded);
        break;
      case Subcommand::kMechanisms:
        break;
    }
  }
  report[kWallClockKey] = SecondsSince(start);
  return report;
}

int Run(const RunSpec& spec, std::ostream& err) {
  std::string text;
  try {
    text = BuildReport(spec).dump(2) + "\n";
  } catch (const InvalidArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "error: " << spec.input << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const DegenerateInstanceError& e) {
    err << "aborted: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  if (spec.output.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(spec.output, std::ios::binary | std::ios::trunc);
  if (!out) {
    err << "error: cannot write '" << spec.output << "'\n";
    return kExitValidation;
  }
  out << text;
  return kExitOk;
}

int RunCommandLine(int argc, char** argv) {
  CLI::App app{"Differentially private Euclidean k-median clustering"};
  RunSpec spec;
  std::string subcommand;
  std::vector<double> split;
  std::size_t d_prime = 0;

  app.add_option("subcommand", subcommand, "cover-check | pipeline | oracle | mechanisms | bench")
      ->required()
      ->check(CLI::IsMember({"cover-check", "pipeline", "oracle", "mechanisms", "bench"}));
  app.add_option("--input", spec.input, "CSV file, one point per row");
  app.add_option("--output", spec.output, "JSON report path (default: stdout)");
  app.add_option("--k", spec.k, "number of centers");
  app.add_option("--eps", spec.eps, "approximation parameter in (0, 1/2]");
  app.add_option("--eps-p", spec.eps_p, "privacy parameter eps_p");
  app.add_option("--delta-p", spec.delta_p, "privacy parameter delta_p");
  app.add_option("--seed", spec.seed, "seed of the run's random stream");
  app.add_option("--repeats", spec.repeats, "independent runs with seeds seed, seed+1, ...");
  app.add_flag("--normalize", spec.normalize, "center on the centroid and scale into B(0, 1)");
  app.add_option("--d-prime", d_prime, "override the projected dimension");
  app.add_option("--budget-split", split, "eps_p fractions for steps 2, 3, 5")
      ->delimiter(',')
      ->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  static const std::pair<const char*, Subcommand> kNames[] = {
      {"cover-check", Subcommand::kCoverCheck}, {"pipeline", Subcommand::kPipeline},
      {"oracle", Subcommand::kOracle},          {"mechanisms", Subcommand::kMechanisms},
      {"bench", Subcommand::kBench}};
  for (const auto& [name, value] : kNames) {
    if (subcommand == name) spec.subcommand = value;
  }
  if (app.count("--d-prime") > 0) spec.d_prime = d_prime;
  if (!split.empty()) {
    double sum = 0.0;
    for (double f : split) sum += f;
    if (std::abs(sum - 1.0) > 1e-9) {
      std::cerr << "error: --budget-split fractions must sum to 1\n";
      return kExitValidation;
    }
    // Renormalize.
    for (std::size_t i = 0; i < 3; ++i) spec.budget_split[i] = split[i] / sum;
  }
  return Run(spec, std::cerr);
}

}  // namespace dpkm
