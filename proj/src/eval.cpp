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

#include "dkpca/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <unordered_map>

#include "dkpca/classify.hpp"
#include "dkpca/errors.hpp"
#include "dkpca/rng.hpp"

namespace dkpca::eval {

namespace {

std::size_t train_size_for(double ratio, std::size_t corpus_size) {
  return static_cast<std::size_t>(std::lround(ratio * static_cast<double>(corpus_size)));
}

void check_plan(std::size_t corpus_size, const SplitPlan& plan) {
  if (corpus_size < 2) throw ParameterError("make_splits: corpus size must be >= 2");
  if (!(plan.ratio > 0.0) || !(plan.ratio < 1.0))
    throw ParameterError("make_splits: ratio must lie in (0, 1)");
  if (plan.repeats < 1) throw ParameterError("make_splits: repeats must be >= 1");
  if (plan.ratio * static_cast<double>(corpus_size) < 1.0)
    throw ParameterError("make_splits: ratio * corpus size is below one instance");
  if (train_size_for(plan.ratio, corpus_size) >= corpus_size)
    throw ParameterError("make_splits: split leaves an empty test set");
}

Split split_from_permutation(const std::vector<std::size_t>& permutation,
                             std::size_t train_size) {
  Split split;
  split.train.assign(permutation.begin(), permutation.begin() + train_size);
  split.test.assign(permutation.begin() + train_size, permutation.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace

std::vector<Split> make_splits(std::size_t corpus_size, const SplitPlan& plan) {
  check_plan(corpus_size, plan);
  const std::size_t train_size = train_size_for(plan.ratio, corpus_size);

  std::vector<Split> splits;
  splits.reserve(plan.repeats);
  for (int r = 0; r < plan.repeats; ++r) {
    SplitMix64 g(derive_subseed(plan.seed, static_cast<std::uint64_t>(r)));
    std::vector<std::size_t> permutation(corpus_size);
    for (std::size_t i = 0; i < corpus_size; ++i) permutation[i] = i;
    shuffle(permutation, g);
    splits.push_back(split_from_permutation(permutation, train_size));
  }
  return splits;
}

std::vector<Split> make_stratified_splits(std::span<const std::string> labels,
                                          const SplitPlan& plan) {
  check_plan(labels.size(), plan);

  // Per-sense index pools in label order, indices ascending.
  std::map<std::string, std::vector<std::size_t>> pools;
  for (std::size_t i = 0; i < labels.size(); ++i) pools[labels[i]].push_back(i);

  std::vector<Split> splits;
  splits.reserve(plan.repeats);
  for (int r = 0; r < plan.repeats; ++r) {
    SplitMix64 g(derive_subseed(plan.seed, static_cast<std::uint64_t>(r)));
    std::vector<bool> in_train(labels.size(), false);
    std::size_t train_total = 0;
    for (const auto& [label, members] : pools) {
      std::vector<std::size_t> pool = members;
      shuffle(pool, g);
      const std::size_t take = train_size_for(plan.ratio, pool.size());
      for (std::size_t i = 0; i < take; ++i) in_train[pool[i]] = true;
      train_total += take;
    }
    if (train_total == 0)
      throw ParameterError("make_stratified_splits: empty training set");
    if (train_total >= labels.size())
      throw ParameterError("make_stratified_splits: empty test set");
    Split split;
    for (std::size_t i = 0; i < labels.size(); ++i)
      (in_train[i] ? split.train : split.test).push_back(i);
    splits.push_back(std::move(split));
  }
  return splits;
}

MetricSet compute_metrics(std::span<const std::string> predictions,
                          std::span<const std::string> truth,
                          const std::vector<std::string>& inventory) {
  if (predictions.size() != truth.size())
    throw ParameterError("compute_metrics: prediction/truth lengths differ");
  if (predictions.empty()) throw ParameterError("compute_metrics: empty input");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < inventory.size(); ++c) index.emplace(inventory[c], c);
  auto class_of = [&](const std::string& label, const char* role) {
    auto it = index.find(label);
    if (it == index.end())
      throw ContractError(std::string("compute_metrics: unknown label in ") + role +
                          ": " + label);
    return it->second;
  };

  const std::size_t classes = inventory.size();
  std::vector<long> tp(classes, 0), fp(classes, 0), fn(classes, 0);
  long correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const std::size_t t = class_of(truth[i], "truth");
    const std::size_t p = class_of(predictions[i], "predictions");
    if (t == p) {
      ++tp[t];
      ++correct;
    } else {
      ++fp[p];
      ++fn[t];
    }
  }

  // Integer-count F1 = 2TP / (2TP + FP + FN). In the pooled (micro) case
  // FP and FN both equal the miss count, so the quotient is the same real
  // number as accuracy and the two divisions round identically.
  long tp_all = 0, fp_all = 0, fn_all = 0;
  double macro_sum = 0.0;
  for (std::size_t c = 0; c < classes; ++c) {
    tp_all += tp[c];
    fp_all += fp[c];
    fn_all += fn[c];
    const long denom = 2 * tp[c] + fp[c] + fn[c];
    if (denom > 0)
      macro_sum += static_cast<double>(2 * tp[c]) / static_cast<double>(denom);
  }

  MetricSet metrics;
  metrics.accuracy = static_cast<double>(correct) / static_cast<double>(predictions.size());
  metrics.f1_micro = static_cast<double>(2 * tp_all) /
                     static_cast<double>(2 * tp_all + fp_all + fn_all);
  metrics.f1_macro = macro_sum / static_cast<double>(classes);
  return metrics;
}

namespace {

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string dim_policy_string(const kpca::DimensionPolicy& policy) {
  if (policy.mode == kpca::DimensionPolicy::Mode::explicit_dim)
    return "explicit:" + std::to_string(policy.dim);
  return "threshold:" + format_double(policy.threshold);
}

}  // namespace

std::string canonical_config(const std::string& dataset_name, const PipelineConfig& config,
                             std::span<const SplitPlan> plans) {
  std::string out;
  out += "dataset=" + dataset_name;
  out += ";kernel=" + kernels::kind_name(config.kernel);
  out += ";sigma=" + format_double(config.sigma);
  out += ";degree=" + std::to_string(config.degree);
  out += ";lambda=" + format_double(config.lambda);
  out += ";steps=" + std::to_string(config.steps);
  out += ";rbf_unsquared=" + std::to_string(config.rbf_unsquared ? 1 : 0);
  out += ";g_from_tf=" + std::to_string(config.g_from_tf ? 1 : 0);
  out += ";dim=" + dim_policy_string(config.dim_policy);
  out += ";k=" + std::to_string(config.k);
  out += ";stopwords=" + config.stopwords_id;
  out += ";target_forms=";
  for (std::size_t i = 0; i < config.target_forms.size(); ++i) {
    if (i) out += "|";
    out += config.target_forms[i];
  }
  out += ";ratios=";
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (i) out += "|";
    out += format_double(plans[i].ratio);
  }
  if (!plans.empty()) {
    out += ";repeats=" + std::to_string(plans.front().repeats);
    out += ";seed=" + std::to_string(plans.front().seed);
    out += ";stratified=" + std::to_string(plans.front().stratified ? 1 : 0);
  }
  return out;
}

std::string config_fingerprint(const std::string& canonical) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return buffer;
}

PipelineArtifacts run_pipeline(const corpus::LabeledCorpus& corpus,
                               const PipelineConfig& config) {
  PipelineArtifacts artifacts;

  corpus::Vocabulary vocab =
      corpus::build_vocabulary(corpus, config.stopwords, config.target_forms);
  auto [doc_term, incidence] = corpus::build_doc_term_matrix(corpus, vocab);
  artifacts.doc_term = std::move(doc_term);
  artifacts.incidence = std::move(incidence);

  switch (config.kernel) {
    case kernels::Kind::linear:
      artifacts.kernel = kernels::gram_linear(artifacts.doc_term.values);
      break;
    case kernels::Kind::rbf:
      artifacts.kernel =
          kernels::gram_rbf(artifacts.doc_term.values, config.sigma, config.rbf_unsquared);
      break;
    case kernels::Kind::poly:
      artifacts.kernel = kernels::gram_poly(artifacts.doc_term.values, config.degree);
      break;
    case kernels::Kind::diffusion: {
      kernels::CooccurrenceMatrix cooc =
          config.g_from_tf ? kernels::cooccurrence_from_tf(artifacts.doc_term.values)
                           : kernels::cooccurrence_matrix(artifacts.incidence.values);
      kernels::SemanticMatrix semantic =
          kernels::diffusion_semantic_matrix(cooc, config.lambda, config.steps);
      artifacts.kernel = kernels::gram_diffusion(artifacts.doc_term.values, semantic);
      break;
    }
  }

  artifacts.centered = kpca::center_kernel(artifacts.kernel);
  artifacts.spectrum = kpca::symmetric_eigendecomposition(artifacts.centered);
  artifacts.dimension = kpca::select_dimension(artifacts.spectrum, config.dim_policy);
  artifacts.projection = kpca::project(artifacts.spectrum, artifacts.dimension);
  return artifacts;
}

namespace {

// Rows of the projection transposed into one point per document.
Matrix points_from_projection(const kpca::Projection& projection) {
  const std::size_t d = projection.coordinates.rows();
  const std::size_t m = projection.coordinates.cols();
  Matrix points(m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < d; ++r) points(i, r) = projection.coordinates(r, i);
  return points;
}

Matrix take_rows(const Matrix& points, const std::vector<std::size_t>& rows) {
  Matrix out(rows.size(), points.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < points.cols(); ++c) out(i, c) = points(rows[i], c);
  return out;
}

MetricSet mean_metrics(const std::vector<MetricSet>& sets) {
  MetricSet mean;
  for (const MetricSet& s : sets) {
    mean.accuracy += s.accuracy;
    mean.f1_micro += s.f1_micro;
    mean.f1_macro += s.f1_macro;
  }
  const double n = static_cast<double>(sets.size());
  mean.accuracy /= n;
  mean.f1_micro /= n;
  mean.f1_macro /= n;
  return mean;
}

[[noreturn]] void rethrow_annotated(const Error& error, const std::string& dataset,
                                    double ratio, int repeat) {
  char context[96];
  std::snprintf(context, sizeof context, " (dataset=%s, ratio=%.4f, repeat=%d)",
                dataset.c_str(), ratio, repeat);
  const std::string message = error.what() + std::string(context);
  if (dynamic_cast<const ParameterError*>(&error) != nullptr) throw ParameterError(message);
  if (dynamic_cast<const ContractError*>(&error) != nullptr) throw ContractError(message);
  if (dynamic_cast<const NumericError*>(&error) != nullptr) throw NumericError(message);
  throw Error(message);
}

}  // namespace

EvaluationReport run_experiment(const corpus::LabeledCorpus& corpus,
                                const PipelineConfig& config,
                                std::span<const SplitPlan> plans,
                                const std::string& dataset_name) {
  if (plans.empty()) throw ParameterError("run_experiment: no split plans");
  if (config.k < 1) throw ParameterError("run_experiment: k must be >= 1");

  PipelineArtifacts artifacts = run_pipeline(corpus, config);
  const Matrix points = points_from_projection(artifacts.projection);

  std::vector<std::string> labels;
  labels.reserve(corpus.size());
  for (const auto& instance : corpus.instances) labels.push_back(instance.label);

  EvaluationReport report;
  report.fingerprint =
      config_fingerprint(canonical_config(dataset_name, config, plans));

  for (const SplitPlan& plan : plans) {
    const std::size_t train_size = train_size_for(plan.ratio, corpus.size());
    if (train_size < corpus.sense_inventory.size()) {
      char warning[160];
      std::snprintf(warning, sizeof warning,
                    "ratio %.4f: train size %zu is below the %zu senses; some senses "
                    "will be unseen",
                    plan.ratio, train_size, corpus.sense_inventory.size());
      report.warnings.push_back(warning);
    }

    const std::vector<Split> splits =
        plan.stratified ? make_stratified_splits(labels, plan)
                        : make_splits(corpus.size(), plan);

    std::vector<MetricSet> per_repeat;
    per_repeat.reserve(splits.size());
    for (std::size_t r = 0; r < splits.size(); ++r) {
      try {
        const Split& split = splits[r];
        std::vector<std::string> train_labels;
        train_labels.reserve(split.train.size());
        for (std::size_t i : split.train) train_labels.push_back(labels[i]);

        classify::KnnModel model =
            classify::knn_fit(take_rows(points, split.train), std::move(train_labels),
                              config.k);

        std::vector<std::string> predictions;
        std::vector<std::string> truth;
        predictions.reserve(split.test.size());
        truth.reserve(split.test.size());
        for (std::size_t i : split.test) {
          predictions.push_back(classify::knn_predict(model, points.row(i)));
          truth.push_back(labels[i]);
        }
        per_repeat.push_back(
            compute_metrics(predictions, truth, corpus.sense_inventory));
      } catch (const Error& error) {
        rethrow_annotated(error, dataset_name, plan.ratio, static_cast<int>(r) + 1);
      }
    }

    for (std::size_t r = 0; r < per_repeat.size(); ++r)
      report.rows.push_back({dataset_name, config.kernel, plan.ratio,
                             static_cast<int>(r) + 1, per_repeat[r]});
    report.rows.push_back(
        {dataset_name, config.kernel, plan.ratio, kMeanRow, mean_metrics(per_repeat)});
  }
  return report;
}

void write_report_csv(const EvaluationReport& report, std::ostream& out) {
  out << "# config=" << report.fingerprint << "\n";
  out << "dataset,kernel,ratio,repeat,accuracy,f1_micro,f1_macro\n";
  char line[256];
  for (const ReportRow& row : report.rows) {
    char repeat[16];
    if (row.repeat == kMeanRow)
      std::snprintf(repeat, sizeof repeat, "mean");
    else
      std::snprintf(repeat, sizeof repeat, "%d", row.repeat);
    std::snprintf(line, sizeof line, "%s,%s,%.4f,%s,%.4f,%.4f,%.4f\n",
                  row.dataset.c_str(), kernels::kind_name(row.kernel).c_str(), row.ratio,
                  repeat, row.metrics.accuracy, row.metrics.f1_micro,
                  row.metrics.f1_macro);
    out << line;
  }
}

}  // namespace dkpca::eval
