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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dkpca/corpus.hpp"
#include "dkpca/kernels.hpp"
#include "dkpca/kpca.hpp"

namespace dkpca::eval {

// One benchmark condition: a labeled fraction, split `repeats` times from
// `seed`. Identical plans always produce identical splits.
struct SplitPlan {
  double ratio = 0.05;
  int repeats = 10;
  std::uint64_t seed = 0;
  bool stratified = false;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Uniform random splits without replacement; train size is
// round(ratio * corpus_size). Repeat r shuffles 0..m-1 with
// SplitMix64(derive_subseed(seed, r)); both halves are returned sorted.
std::vector<Split> make_splits(std::size_t corpus_size, const SplitPlan& plan);

// Stratified variant: round(ratio * count) per sense, classes processed in
// label order. Used behind a flag for ablation.
std::vector<Split> make_stratified_splits(std::span<const std::string> labels,
                                          const SplitPlan& plan);

struct MetricSet {
  double accuracy = 0.0;
  double f1_micro = 0.0;
  double f1_macro = 0.0;
};

// Accuracy, micro-F1 from pooled counts and macro-F1 averaged over the whole
// inventory (a sense absent from both truth and predictions contributes an
// F1 of zero). For single-label prediction micro-F1 equals accuracy exactly.
MetricSet compute_metrics(std::span<const std::string> predictions,
                          std::span<const std::string> truth,
                          const std::vector<std::string>& inventory);

// Everything upstream of the split: preprocessing, kernel and projection.
struct PipelineConfig {
  corpus::StopwordSet stopwords;
  std::string stopwords_id = "default";     // provenance tag for the fingerprint
  std::vector<std::string> target_forms;    // empty -> lemma + "s" default
  kernels::Kind kernel = kernels::Kind::diffusion;
  double sigma = 1.0;
  int degree = 3;
  double lambda = 0.0039;
  int steps = 3;
  bool rbf_unsquared = false;
  bool g_from_tf = false;
  kpca::DimensionPolicy dim_policy = kpca::DimensionPolicy::variance_threshold(1.0);
  int k = 6;
};

struct ReportRow {
  std::string dataset;
  kernels::Kind kernel = kernels::Kind::diffusion;
  double ratio = 0.0;
  int repeat = 0;  // 1-based; kMeanRow marks the aggregate row
  MetricSet metrics;
};

inline constexpr int kMeanRow = -1;

struct EvaluationReport {
  std::vector<ReportRow> rows;
  std::string fingerprint;  // 16 hex digits of the canonical config
  std::vector<std::string> warnings;
};

// Key=value rendering of (dataset, config, plans) with a fixed key order;
// hashing it yields the fingerprint embedded in reports.
std::string canonical_config(const std::string& dataset_name, const PipelineConfig& config,
                             std::span<const SplitPlan> plans);
std::string config_fingerprint(const std::string& canonical);

// Intermediate products of the unsupervised stage, exposed for the spectrum
// command and for tests that inspect the pipeline mid-flight.
struct PipelineArtifacts {
  corpus::DocumentTermMatrix doc_term;
  corpus::IncidenceMatrix incidence;
  kernels::KernelMatrix kernel;
  kpca::CenteredKernel centered;
  kpca::EigenSpectrum spectrum;
  kpca::Projection projection;
  std::size_t dimension = 0;
};

// Vocabulary, kernel, centering, eigendecomposition and projection over the
// full corpus. Labels play no part here.
PipelineArtifacts run_pipeline(const corpus::LabeledCorpus& corpus,
                               const PipelineConfig& config);

// The whole benchmark: one shared projection over all instances, then for
// every plan and repeat a KNN fit on the train rows and metrics on the test
// rows, plus the per-ratio mean. Errors from inside a repeat are annotated
// with (dataset, ratio, repeat).
EvaluationReport run_experiment(const corpus::LabeledCorpus& corpus,
                                const PipelineConfig& config,
                                std::span<const SplitPlan> plans,
                                const std::string& dataset_name);

// `dataset,kernel,ratio,repeat,accuracy,f1_micro,f1_macro` rows (4 decimal
// places) preceded by a `# config=<fingerprint>` comment line.
void write_report_csv(const EvaluationReport& report, std::ostream& out);

}  // namespace dkpca::eval
