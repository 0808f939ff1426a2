// Copyright 2026 The dkpca authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: `dkpca run` benchmarks a kernel configuration over
// repeated train/test splits, `dkpca spectrum` dumps the centered-kernel
// eigenvalue spectrum for dimension selection, and `dkpca sweep` runs the
// Cartesian product of parameter grids. Logs go to stderr; only report data
// goes to the output file (or stdout when --out is omitted).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dkpca/corpus.hpp"
#include "dkpca/errors.hpp"
#include "dkpca/eval.hpp"
#include "dkpca/kpca.hpp"

namespace {

// Exit codes by error family, so scripts can tell bad configs from bad data.
enum ExitCode {
  kOk = 0,
  kGenericError = 1,
  kParseError = 2,
  kDatasetError = 3,
  kParameterError = 4,
  kResourceError = 5,
  kNumericError = 6,
  kContractError = 7,
};

struct CliOptions {
  std::string dataset;
  std::string config_path;
  std::string kernel = "diffusion";
  double sigma = 1.0;
  int degree = 3;
  double lambda = 0.0039;
  int steps = 3;
  std::size_t dim = 0;
  double dim_threshold = 0.0;
  int k = 6;
  std::vector<double> ratios = {0.05, 0.10, 0.30};
  int repeats = 10;
  std::uint64_t seed = 0;
  std::string stopwords_path;
  std::string out_path;
  bool rbf_unsquared = false;
  bool stratified = false;
  bool g_from_tf = false;

  std::vector<double> grid_lambda;
  std::vector<int> grid_steps;
  std::vector<int> grid_k;
  std::vector<double> grid_sigma;
  std::vector<int> grid_degree;
};

// Flags the user actually passed, for kind-consistency checks.
struct GivenFlags {
  bool sigma = false;
  bool degree = false;
  bool lambda = false;
  bool steps = false;
  bool rbf_unsquared = false;
  bool g_from_tf = false;
};

void add_common_options(CLI::App& cmd, CliOptions& opt, GivenFlags& given) {
  cmd.add_option("--dataset", opt.dataset, "TSV dataset file (label<TAB>text)")
      ->required();
  cmd.add_option("--kernel", opt.kernel, "Kernel: linear, rbf, poly, diffusion")
      ->check(CLI::IsMember({"linear", "rbf", "poly", "diffusion"}));
  cmd.add_option("--sigma", opt.sigma, "RBF width (rbf kernel only)")
      ->trigger_on_parse()
      ->each([&given](const std::string&) { given.sigma = true; });
  cmd.add_option("--degree", opt.degree, "Polynomial degree (poly kernel only)")
      ->trigger_on_parse()
      ->each([&given](const std::string&) { given.degree = true; });
  cmd.add_option("--lambda", opt.lambda, "Diffusion decay factor (diffusion kernel only)")
      ->trigger_on_parse()
      ->each([&given](const std::string&) { given.lambda = true; });
  cmd.add_option("--steps", opt.steps, "Diffusion Taylor steps (diffusion kernel only)")
      ->trigger_on_parse()
      ->each([&given](const std::string&) { given.steps = true; });
  auto* dim = cmd.add_option("--dim", opt.dim, "Explicit projection dimension")
                  ->check(CLI::PositiveNumber);
  auto* thr = cmd.add_option("--dim-threshold", opt.dim_threshold,
                             "Cumulative eigenvalue-ratio threshold in (0,1]");
  dim->excludes(thr);
  thr->excludes(dim);
  cmd.add_option("--k", opt.k, "KNN neighbor count");
  cmd.add_option("--ratios", opt.ratios, "Labeled-data ratios")->delimiter(',');
  cmd.add_option("--repeats", opt.repeats, "Random splits per ratio");
  cmd.add_option("--seed", opt.seed, "Top-level RNG seed; all randomness flows from it");
  cmd.add_option("--stopwords", opt.stopwords_path,
                 "Stopword list file (one word per line); bundled list by default");
  cmd.add_option("--out", opt.out_path, "Output file (stdout when omitted)");
  cmd.add_flag("--rbf-unsquared", opt.rbf_unsquared,
               "Use the plain (unsquared) norm in the RBF exponent")
      ->trigger_on_parse()
      ->each([&given](const std::string&) { given.rbf_unsquared = true; });
  cmd.add_flag("--stratified", opt.stratified, "Stratify splits by sense");
  cmd.add_flag("--g-from-tf", opt.g_from_tf,
               "Build the co-occurrence matrix from tf counts instead of 0/1 incidence")
      ->trigger_on_parse()
      ->each([&given](const std::string&) { given.g_from_tf = true; });
  cmd.add_option("--config", opt.config_path,
                 "Plain key=value config file; flags override it");
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Feeds key=value lines into the parsed subcommand. Keys name long options
// without the leading dashes; values already given on the command line win.
void apply_config_file(CLI::App& cmd, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dkpca::ParseError("cannot open config file: " + path);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw dkpca::ParseError(path + ":" + std::to_string(line_number) +
                              ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw dkpca::ParseError(path + ":" + std::to_string(line_number) + ": empty key");

    CLI::Option* option = cmd.get_option_no_throw("--" + key);
    if (option == nullptr)
      throw dkpca::ParseError(path + ":" + std::to_string(line_number) +
                              ": unknown config key: " + key);
    if (option->count() > 0) continue;
    option->add_result(value);
    option->run_callback();
  }
}

void check_kind_consistency(const CliOptions& opt, const GivenFlags& given) {
  const auto kind = dkpca::kernels::kind_from_name(opt.kernel);
  using Kind = dkpca::kernels::Kind;
  if (given.sigma && kind != Kind::rbf)
    throw dkpca::ParameterError("--sigma only applies to the rbf kernel");
  if (given.rbf_unsquared && kind != Kind::rbf)
    throw dkpca::ParameterError("--rbf-unsquared only applies to the rbf kernel");
  if (given.degree && kind != Kind::poly)
    throw dkpca::ParameterError("--degree only applies to the poly kernel");
  if (given.lambda && kind != Kind::diffusion)
    throw dkpca::ParameterError("--lambda only applies to the diffusion kernel");
  if (given.steps && kind != Kind::diffusion)
    throw dkpca::ParameterError("--steps only applies to the diffusion kernel");
  if (given.g_from_tf && kind != Kind::diffusion)
    throw dkpca::ParameterError("--g-from-tf only applies to the diffusion kernel");
}

dkpca::eval::PipelineConfig make_pipeline_config(const CliOptions& opt) {
  dkpca::eval::PipelineConfig config;
  if (opt.stopwords_path.empty()) {
    config.stopwords = dkpca::corpus::default_stopwords();
    config.stopwords_id = "default";
  } else {
    config.stopwords = dkpca::corpus::load_stopwords(opt.stopwords_path);
    config.stopwords_id = opt.stopwords_path;
  }
  config.kernel = dkpca::kernels::kind_from_name(opt.kernel);
  config.sigma = opt.sigma;
  config.degree = opt.degree;
  config.lambda = opt.lambda;
  config.steps = opt.steps;
  config.rbf_unsquared = opt.rbf_unsquared;
  config.g_from_tf = opt.g_from_tf;
  config.k = opt.k;
  if (opt.dim > 0)
    config.dim_policy = dkpca::kpca::DimensionPolicy::explicit_dim(opt.dim);
  else if (opt.dim_threshold > 0.0)
    config.dim_policy = dkpca::kpca::DimensionPolicy::variance_threshold(opt.dim_threshold);
  else
    config.dim_policy = dkpca::kpca::DimensionPolicy::variance_threshold(1.0);
  return config;
}

std::vector<dkpca::eval::SplitPlan> make_plans(const CliOptions& opt) {
  if (opt.ratios.empty()) throw dkpca::ParameterError("--ratios must not be empty");
  std::vector<dkpca::eval::SplitPlan> plans;
  for (double ratio : opt.ratios)
    plans.push_back({ratio, opt.repeats, opt.seed, opt.stratified});
  return plans;
}

std::string dataset_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Buffered write: nothing touches the output path until the run succeeded.
void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw dkpca::IoError("cannot open output file: " + out_path);
  out << content;
  if (!out) throw dkpca::IoError("failed writing output file: " + out_path);
}

void print_summary(const dkpca::eval::EvaluationReport& report) {
  for (const std::string& warning : report.warnings)
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  std::fprintf(stderr, "%-12s %-10s %7s %9s %9s %9s\n", "dataset", "kernel", "ratio",
               "accuracy", "f1_micro", "f1_macro");
  for (const auto& row : report.rows) {
    if (row.repeat != dkpca::eval::kMeanRow) continue;
    std::fprintf(stderr, "%-12s %-10s %7.4f %9.4f %9.4f %9.4f\n", row.dataset.c_str(),
                 dkpca::kernels::kind_name(row.kernel).c_str(), row.ratio,
                 row.metrics.accuracy, row.metrics.f1_micro, row.metrics.f1_macro);
  }
}

int cmd_run(const CliOptions& opt, const GivenFlags& given) {
  check_kind_consistency(opt, given);
  const auto config = make_pipeline_config(opt);
  const auto plans = make_plans(opt);
  const auto corpus = dkpca::corpus::load_dataset(opt.dataset);
  std::fprintf(stderr, "loaded %zu instances, %zu senses from %s\n", corpus.size(),
               corpus.sense_inventory.size(), opt.dataset.c_str());

  const auto report =
      dkpca::eval::run_experiment(corpus, config, plans, dataset_name(opt.dataset));

  std::ostringstream buffer;
  dkpca::eval::write_report_csv(report, buffer);
  emit(buffer.str(), opt.out_path);
  print_summary(report);
  return kOk;
}

int cmd_spectrum(const CliOptions& opt, const GivenFlags& given) {
  check_kind_consistency(opt, given);
  const auto config = make_pipeline_config(opt);
  const auto corpus = dkpca::corpus::load_dataset(opt.dataset);
  std::fprintf(stderr, "loaded %zu instances from %s\n", corpus.size(),
               opt.dataset.c_str());

  const auto artifacts = dkpca::eval::run_pipeline(corpus, config);
  std::ostringstream buffer;
  dkpca::kpca::write_spectrum_csv(artifacts.spectrum, buffer);
  emit(buffer.str(), opt.out_path);
  std::fprintf(stderr, "spectrum of %zu eigenvalues written; selected dimension %zu\n",
               artifacts.spectrum.size(), artifacts.dimension);
  return kOk;
}

int cmd_sweep(const CliOptions& opt, const GivenFlags& given) {
  check_kind_consistency(opt, given);
  const bool any_grid = !opt.grid_lambda.empty() || !opt.grid_steps.empty() ||
                        !opt.grid_k.empty() || !opt.grid_sigma.empty() ||
                        !opt.grid_degree.empty();
  if (!any_grid)
    throw dkpca::ParameterError("sweep needs at least one non-empty --grid-* option");

  // Absent grids degrade to the single base value, so one Cartesian product
  // covers every case. Combination order follows the flag order below.
  auto lambdas = opt.grid_lambda.empty() ? std::vector<double>{opt.lambda} : opt.grid_lambda;
  auto steps = opt.grid_steps.empty() ? std::vector<int>{opt.steps} : opt.grid_steps;
  auto ks = opt.grid_k.empty() ? std::vector<int>{opt.k} : opt.grid_k;
  auto sigmas = opt.grid_sigma.empty() ? std::vector<double>{opt.sigma} : opt.grid_sigma;
  auto degrees = opt.grid_degree.empty() ? std::vector<int>{opt.degree} : opt.grid_degree;

  const auto corpus = dkpca::corpus::load_dataset(opt.dataset);
  const auto plans = make_plans(opt);
  const auto name = dataset_name(opt.dataset);

  std::ostringstream buffer;
  std::size_t combos = 0;
  for (double lambda : lambdas)
    for (int step : steps)
      for (int k : ks)
        for (double sigma : sigmas)
          for (int degree : degrees) {
            CliOptions combo = opt;
            combo.lambda = lambda;
            combo.steps = step;
            combo.k = k;
            combo.sigma = sigma;
            combo.degree = degree;
            const auto config = make_pipeline_config(combo);
            const auto report = dkpca::eval::run_experiment(corpus, config, plans, name);
            char header[160];
            std::snprintf(header, sizeof header,
                          "# combo lambda=%g steps=%d k=%d sigma=%g degree=%d\n", lambda,
                          step, k, sigma, degree);
            buffer << header;
            dkpca::eval::write_report_csv(report, buffer);
            ++combos;
            std::fprintf(stderr, "combo %zu done: lambda=%g steps=%d k=%d sigma=%g degree=%d\n",
                         combos, lambda, step, k, sigma, degree);
          }

  emit(buffer.str(), opt.out_path);
  std::fprintf(stderr, "sweep finished: %zu combinations\n", combos);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion-kernel PCA for supervised word sense disambiguation"};
  app.require_subcommand(1);

  CliOptions opt;
  GivenFlags given;

  CLI::App* run = app.add_subcommand("run", "Benchmark a kernel over repeated splits");
  add_common_options(*run, opt, given);

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Dump the centered-kernel eigenvalue spectrum");
  add_common_options(*spectrum, opt, given);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a Cartesian parameter grid");
  add_common_options(*sweep, opt, given);
  sweep->add_option("--grid-lambda", opt.grid_lambda, "Lambda grid")->delimiter(',');
  sweep->add_option("--grid-steps", opt.grid_steps, "Taylor-step grid")->delimiter(',');
  sweep->add_option("--grid-k", opt.grid_k, "Neighbor-count grid")->delimiter(',');
  sweep->add_option("--grid-sigma", opt.grid_sigma, "Sigma grid")->delimiter(',');
  sweep->add_option("--grid-degree", opt.grid_degree, "Degree grid")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParseError;
  }

  try {
    CLI::App* active = run->parsed() ? run : spectrum->parsed() ? spectrum : sweep;
    if (!opt.config_path.empty()) apply_config_file(*active, opt.config_path);
    if (run->parsed()) return cmd_run(opt, given);
    if (spectrum->parsed()) return cmd_spectrum(opt, given);
    if (sweep->parsed()) return cmd_sweep(opt, given);
    return kParseError;
  } catch (const dkpca::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParseError;
  } catch (const dkpca::DatasetError& e) {
    std::fprintf(stderr, "dataset error: %s\n", e.what());
    return kDatasetError;
  } catch (const dkpca::ParameterError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return kParameterError;
  } catch (const dkpca::ResourceError& e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return kResourceError;
  } catch (const dkpca::NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kNumericError;
  } catch (const dkpca::DegenerateKernelError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kNumericError;
  } catch (const dkpca::ContractError& e) {
    std::fprintf(stderr, "internal contract violation: %s\n", e.what());
    return kContractError;
  } catch (const dkpca::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kGenericError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kGenericError;
  }
}
