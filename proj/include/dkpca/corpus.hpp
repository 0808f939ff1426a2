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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dkpca/linalg.hpp"

namespace dkpca::corpus {

using StopwordSet = std::unordered_set<std::string>;

// One labeled occurrence of the target word: a sense identifier plus the
// raw context it appeared in.
struct Instance {
  std::string label;
  std::string text;
};

// All instances for a single ambiguous target word, in file order.
// sense_inventory is kept sorted so iteration order never depends on hashing.
struct LabeledCorpus {
  std::string target_word;
  std::vector<Instance> instances;
  std::vector<std::string> sense_inventory;

  std::size_t size() const { return instances.size(); }
};

// Ordered term list plus its column index. The target word never appears.
struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return terms.size(); }
  bool contains(const std::string& term) const { return index.count(term) != 0; }
};

// Documents x terms matrix of raw term-frequency counts.
struct DocumentTermMatrix {
  Matrix values;
  Vocabulary vocab;

  std::size_t doc_count() const { return values.rows(); }
  std::size_t term_count() const { return values.cols(); }
};

// Binary presence matrix: entry (i,j) is 1 exactly when term j occurs in
// document i. Always derived from a DocumentTermMatrix.
struct IncidenceMatrix {
  Matrix values;
};

enum class DatasetFormat { tsv };

// Guard for m*N allocations; generous for the lexical-sample corpora this
// targets while still catching accidental monster inputs.
inline constexpr std::size_t kDefaultMatrixEntryCap = 400'000'000;

// Whitespace-split tokens that are entirely ASCII-alphabetic, lowercased,
// with stopwords removed. A chunk containing any non-letter (digits,
// punctuation, bytes outside ASCII) is dropped whole. Order and duplicates
// are preserved.
std::vector<std::string> tokenize(std::string_view text, const StopwordSet& stopwords);

// Reads `label<TAB>text` lines. The target word defaults to the lowercased
// file stem ("interest.tsv" -> "interest"); pass target_word to override.
LabeledCorpus load_dataset(const std::filesystem::path& path,
                           DatasetFormat format = DatasetFormat::tsv,
                           std::string target_word = "");

// Union of tokens over all instances in first-occurrence order, minus the
// target word's surface forms. With target_forms empty the match set is the
// lowercase target word plus its "s" plural.
Vocabulary build_vocabulary(const LabeledCorpus& corpus, const StopwordSet& stopwords,
                            std::vector<std::string> target_forms = {});

// Term-frequency counts per document, plus the binary incidence matrix.
// Requires vocab to have been built from this corpus with the same stopwords.
std::pair<DocumentTermMatrix, IncidenceMatrix> build_doc_term_matrix(
    const LabeledCorpus& corpus, const Vocabulary& vocab,
    std::size_t max_entries = kDefaultMatrixEntryCap);

// One token per line, lowercased. Blank lines ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

// The bundled English list (data/stopwords_en.txt, embedded at build time).
const StopwordSet& default_stopwords();

}  // namespace dkpca::corpus
