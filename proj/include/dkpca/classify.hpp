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

#include <span>
#include <string>
#include <vector>

#include "dkpca/linalg.hpp"

namespace dkpca::classify {

// Brute-force k-nearest-neighbor model. A lazy learner: fit stores the
// points verbatim, prediction does all the work. Brute force is fine at the
// few thousand points this pipeline produces.
struct KnnModel {
  Matrix points;  // one training point per row
  std::vector<std::string> labels;
  int k = 1;

  std::size_t size() const { return points.rows(); }
  std::size_t dimension() const { return points.cols(); }
};

KnnModel knn_fit(const Matrix& train_points, std::vector<std::string> train_labels,
                 int k);

// Majority label among the k nearest points by Euclidean distance.
// Neighbors are ranked by (distance, insertion index), so equal distances at
// the k-th position resolve to earlier-stored points. Vote ties go to the
// tied label with the smallest summed distance, then to the
// lexicographically smallest label; both rules are storage-order
// independent.
std::string knn_predict(const KnnModel& model, std::span<const double> query);

}  // namespace dkpca::classify
