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

#include "dkpca/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dkpca/default_stopwords.hpp"
#include "dkpca/errors.hpp"

namespace dkpca::corpus {

namespace {

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Locale-free lowercase; only A-Z move.
std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const StopwordSet& stopwords) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    std::size_t start = i;
    bool all_letters = true;
    while (i < n && !is_space(text[i])) {
      if (!is_ascii_letter(text[i])) all_letters = false;
      ++i;
    }
    if (i == start || !all_letters) continue;
    std::string token = to_lower(text.substr(start, i - start));
    if (stopwords.count(token) == 0) tokens.push_back(std::move(token));
  }
  return tokens;
}

LabeledCorpus load_dataset(const std::filesystem::path& path, DatasetFormat format,
                           std::string target_word) {
  (void)format;  // only TSV exists; the parameter fixes the signature
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open dataset file: " + path.string());

  LabeledCorpus corpus;
  corpus.target_word =
      target_word.empty() ? to_lower(path.stem().string()) : to_lower(target_word);

  std::set<std::string> labels;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": expected label<TAB>text");
    std::string label = line.substr(0, tab);
    std::string text = line.substr(tab + 1);
    if (trim(label).empty())
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": empty label");
    if (trim(text).empty())
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": empty context text");

    labels.insert(label);
    corpus.instances.push_back({std::move(label), std::move(text)});
  }

  if (corpus.instances.size() < 2)
    throw DatasetError(path.string() + ": need at least 2 instances, got " +
                       std::to_string(corpus.instances.size()));
  if (labels.size() < 2)
    throw DatasetError(path.string() + ": need at least 2 distinct sense labels, got " +
                       std::to_string(labels.size()));

  corpus.sense_inventory.assign(labels.begin(), labels.end());
  return corpus;
}

Vocabulary build_vocabulary(const LabeledCorpus& corpus, const StopwordSet& stopwords,
                            std::vector<std::string> target_forms) {
  if (corpus.instances.empty()) throw DatasetError("empty corpus");

  StopwordSet excluded;
  if (target_forms.empty()) {
    std::string lemma = to_lower(corpus.target_word);
    if (!lemma.empty()) {
      excluded.insert(lemma);
      excluded.insert(lemma + "s");
    }
  } else {
    for (const auto& form : target_forms) excluded.insert(to_lower(form));
  }

  Vocabulary vocab;
  for (const Instance& instance : corpus.instances) {
    for (std::string& token : tokenize(instance.text, stopwords)) {
      if (excluded.count(token) != 0) continue;
      if (vocab.index.count(token) != 0) continue;
      vocab.index.emplace(token, vocab.terms.size());
      vocab.terms.push_back(std::move(token));
    }
  }

  if (vocab.terms.empty())
    throw DatasetError("vocabulary is empty after stopword and target-word filtering");
  return vocab;
}

std::pair<DocumentTermMatrix, IncidenceMatrix> build_doc_term_matrix(
    const LabeledCorpus& corpus, const Vocabulary& vocab, std::size_t max_entries) {
  const std::size_t m = corpus.instances.size();
  const std::size_t n = vocab.terms.size();
  if (m == 0 || n == 0) throw DatasetError("empty corpus or vocabulary");
  if (n != 0 && m > max_entries / n)
    throw ResourceError("document-term matrix " + std::to_string(m) + "x" +
                        std::to_string(n) + " exceeds the entry cap of " +
                        std::to_string(max_entries));

  DocumentTermMatrix dtm;
  dtm.values = Matrix(m, n);
  dtm.vocab = vocab;

  // Stopwords and the target word are absent from the index, so plain
  // tokenization plus an index lookup reproduces the vocabulary filter.
  for (std::size_t i = 0; i < m; ++i) {
    for (const std::string& token : tokenize(corpus.instances[i].text, {})) {
      auto it = vocab.index.find(token);
      if (it != vocab.index.end()) dtm.values(i, it->second) += 1.0;
    }
  }

  IncidenceMatrix incidence;
  incidence.values = Matrix(m, n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dtm.values(i, j) > 0.0) {
        incidence.values(i, j) = 1.0;
        seen[j] = true;
      }

  for (std::size_t j = 0; j < n; ++j)
    if (!seen[j])
      throw DatasetError("vocabulary term never occurs in the corpus: " +
                         vocab.terms[j]);

  return {std::move(dtm), std::move(incidence)};
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open stopword file: " + path.string());
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto word = trim(line);
    if (!word.empty()) words.insert(to_lower(word));
  }
  return words;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words = [] {
    StopwordSet set;
    std::istringstream in{std::string(kDefaultStopwordsText)};
    std::string line;
    while (std::getline(in, line)) {
      auto word = trim(line);
      if (!word.empty()) set.insert(to_lower(word));
    }
    return set;
  }();
  return words;
}

}  // namespace dkpca::corpus
