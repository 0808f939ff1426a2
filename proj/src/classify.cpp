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

#include "dkpca/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dkpca/errors.hpp"

namespace dkpca::classify {

KnnModel knn_fit(const Matrix& train_points, std::vector<std::string> train_labels,
                 int k) {
  if (train_points.rows() != train_labels.size())
    throw ParameterError("knn_fit: " + std::to_string(train_points.rows()) +
                         " points but " + std::to_string(train_labels.size()) +
                         " labels");
  if (train_points.rows() == 0) throw ParameterError("knn_fit: empty training set");
  if (k < 1) throw ParameterError("knn_fit: k must be >= 1");
  if (static_cast<std::size_t>(k) > train_points.rows())
    throw ParameterError("knn_fit: k=" + std::to_string(k) + " exceeds the " +
                         std::to_string(train_points.rows()) + " training points");
  return {train_points, std::move(train_labels), k};
}

std::string knn_predict(const KnnModel& model, std::span<const double> query) {
  if (query.size() != model.dimension())
    throw ParameterError("knn_predict: query has dimension " +
                         std::to_string(query.size()) + ", model has " +
                         std::to_string(model.dimension()));

  const std::size_t n = model.size();
  std::vector<double> distance(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto point = model.points.row(i);
    double sq = 0.0;
    for (std::size_t c = 0; c < query.size(); ++c) {
      const double d = point[c] - query[c];
      sq += d * d;
    }
    distance[i] = std::sqrt(sq);
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  const std::size_t k = static_cast<std::size_t>(model.k);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (distance[a] != distance[b]) return distance[a] < distance[b];
                      return a < b;
                    });

  // std::map keeps vote iteration in label order, independent of storage.
  struct Vote {
    int count = 0;
    double summed_distance = 0.0;
  };
  std::map<std::string, Vote> votes;
  for (std::size_t r = 0; r < k; ++r) {
    Vote& vote = votes[model.labels[order[r]]];
    vote.count += 1;
    vote.summed_distance += distance[order[r]];
  }

  const std::string* winner = nullptr;
  const Vote* best = nullptr;
  for (const auto& [label, vote] : votes) {
    if (best == nullptr || vote.count > best->count ||
        (vote.count == best->count && vote.summed_distance < best->summed_distance)) {
      winner = &label;
      best = &vote;
    }
    // Equal count and equal sum falls through: the map already visited the
    // lexicographically smaller label first.
  }
  return *winner;
}

}  // namespace dkpca::classify
