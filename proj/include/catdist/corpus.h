// Copyright 2026 The catdist Authors.
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

// Co-occurrence counting and word-vector weighting.
//
// Corpus format: UTF-8, one sentence per line, tokens separated by single
// spaces. A token is a lemma optionally suffixed with `_POS`; the tag is
// ignored for counting and kept for relation extraction. Blank lines are
// skipped.

#ifndef CATDIST_CORPUS_H_
#define CATDIST_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "catdist/linalg.h"

namespace catdist {

struct Token {
  std::string lemma;
  std::string pos;  // empty when the token carried no tag

  friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

// Splits `lemma_POS` at the last underscore. Throws ParseError on empty
// tokens (double spaces, leading/trailing space) or an empty lemma.
Sentence ParseCorpusLine(std::string_view line, std::size_t line_number);
std::vector<Sentence> ReadCorpus(std::istream& in);

struct CooccurrenceModel {
  std::unordered_map<std::string, std::int64_t> target_counts;
  // target -> context -> count
  std::unordered_map<std::string, std::unordered_map<std::string, std::int64_t>> context_counts;
  // context -> Σ_target context_counts[target][context]
  std::unordered_map<std::string, std::int64_t> context_totals;
  // lemma -> number of sentences containing it
  std::unordered_map<std::string, std::int64_t> sentence_frequency;
  std::int64_t total_tokens = 0;
  std::int64_t total_sentences = 0;

  std::int64_t target_count(std::string_view lemma) const;
  std::int64_t context_count(std::string_view target, std::string_view context) const;
  std::int64_t context_total(std::string_view context) const;
  std::int64_t sentences_containing(std::string_view lemma) const;

  // Adds the counts of one sentence; every pair of positions at distance
  // 1..window within the sentence is counted in both directions.
  void AddSentence(const Sentence& sentence, int window);
  // Count addition, used to combine per-shard models.
  void Merge(const CooccurrenceModel& other);

  friend bool operator==(const CooccurrenceModel&, const CooccurrenceModel&) = default;
};

// Counts sentences in parallel shards and merges them. threads <= 1 runs
// inline. Throws std::invalid_argument if window < 1.
CooccurrenceModel CountCooccurrences(std::span<const Sentence> corpus, int window,
                                     unsigned threads = 1);

// Streams a corpus file in chunks. Malformed lines raise ParseError with the
// line number.
CooccurrenceModel CountCorpusFile(const std::string& path, int window, unsigned threads = 1);

// The k most frequent lemmas by token count, stoplist removed, ordered by
// descending count then ascending lemma.
VocabIndex SelectBasis(const CooccurrenceModel& model, std::size_t k,
                       const std::set<std::string>& stoplist = {});

enum class WeightingKind { kProbabilityRatio, kTfIdf };

struct WeightingScheme {
  WeightingKind kind = WeightingKind::kProbabilityRatio;
  int window = 5;
  std::size_t basis_size = 2000;

  // Throws std::invalid_argument if window < 1 or basis_size < 1.
  void Validate() const;
};

std::string_view WeightingName(WeightingKind kind);
// Accepts "probability-ratio" and "tf-idf"; throws std::invalid_argument.
WeightingKind ParseWeighting(std::string_view name);

// Weighted order-1 vector of `target` over `vocab`.
//
// probability-ratio: w_i = P(n_i | target) / P(n_i), both probabilities
//   normalised over the basis.
// tf-idf: w_i = count(target, n_i) * ln(sentences / sentences containing n_i).
//
// An unknown target yields the zero vector and a logged warning.
SemanticTensor BuildVector(std::string_view target, const CooccurrenceModel& model,
                           const VocabIndex& vocab, const WeightingScheme& scheme);

// Word vectors keyed by lemma, all over the same basis.
struct VectorLexicon {
  std::size_t dim = 0;
  std::string vocab_file;  // informational, written into the file header
  std::map<std::string, SemanticTensor> vectors;

  const SemanticTensor* find(std::string_view lemma) const;

  friend bool operator==(const VectorLexicon&, const VectorLexicon&) = default;
};

// Vectors for every target lemma in the model.
VectorLexicon BuildLexicon(const CooccurrenceModel& model, const VocabIndex& vocab,
                           const WeightingScheme& scheme, std::string vocab_file = "vocab.txt");

// counts.tsv: `META<TAB>tokens<TAB>sentences`, then sorted
// `T<TAB>lemma<TAB>count`, `C<TAB>target<TAB>context<TAB>count` and
// `D<TAB>lemma<TAB>sentences` records.
void WriteCounts(std::ostream& out, const CooccurrenceModel& model);
CooccurrenceModel ReadCounts(std::istream& in);

// One basis lemma per line; line number (0-based) is the index.
void WriteVocab(std::ostream& out, const VocabIndex& vocab);
VocabIndex ReadVocab(std::istream& in);

// Header `# vocab=<file> dim=<r>`, then `lemma<TAB>i:weight<TAB>...` with
// ascending indices. A lemma with a zero vector is written alone.
void WriteVectorLexicon(std::ostream& out, const VectorLexicon& lexicon);
VectorLexicon ReadVectorLexicon(std::istream& in);

// One lemma per line; blank lines ignored.
std::set<std::string> ReadStoplist(std::istream& in);

}  // namespace catdist

#endif  // CATDIST_CORPUS_H_
