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

// Verb disambiguation evaluation.
//
// Each dataset row pairs a target verb with a landmark verb in the context of
// a subject (and, for the transitive set, an object), together with one
// annotator's 1-7 similarity judgement and a HIGH/LOW class. A model scores a
// row by the cosine between the composed target and landmark phrases; models
// are compared by their mean score on HIGH and LOW rows and by Spearman's rho
// against the annotator scores. Every annotator row is one observation.

#ifndef CATDIST_EVAL_H_
#define CATDIST_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catdist/compose.h"

namespace catdist {

enum class HiLo { kHigh, kLow };
enum class DatasetArity { kIntransitive, kTransitive };

DatasetArity ParseDatasetArity(std::string_view name);

struct DatasetEntry {
  std::string annotator;
  std::string target_verb;
  std::string landmark_verb;
  std::string subject;
  std::optional<std::string> object;  // present iff transitive
  int score = 1;                      // 1..7
  HiLo hilo = HiLo::kHigh;

  PhraseSpec TargetPhrase() const;
  PhraseSpec LandmarkPhrase() const;

  friend bool operator==(const DatasetEntry&, const DatasetEntry&) = default;
};

// Whitespace-separated columns after one header line:
//   intransitive: participant verb noun landmark input hilo
//   transitive:   participant verb subject object landmark input hilo
// `hilo` is matched case-insensitively. Throws ParseError with the line
// number on a wrong column count, a score outside 1..7 or a bad class.
std::vector<DatasetEntry> LoadDataset(std::istream& in, DatasetArity arity);
std::vector<DatasetEntry> LoadDatasetFile(const std::string& path, DatasetArity arity);
void WriteDataset(std::ostream& out, std::span<const DatasetEntry> entries, DatasetArity arity);

struct ScoredEntry {
  std::size_t row = 0;  // position in the input list
  double score = 0.0;
};

struct ScoreResult {
  std::vector<ScoredEntry> scored;  // ascending row
  std::size_t skipped = 0;          // rows with words missing from the lexicons
};

// Rows are independent; `threads` > 1 scores them concurrently. Output order
// is by row regardless of scheduling.
ScoreResult ScoreEntries(std::span<const DatasetEntry> entries, ModelKind kind,
                         const Lexicons& lexicons, unsigned threads = 1);

// Pearson correlation of average ranks. Throws std::invalid_argument on a
// length mismatch or fewer than two points, UndefinedCorrelation when either
// side is constant.
double SpearmanRho(std::span<const double> model_scores, std::span<const double> human_scores);

struct HighLowMeans {
  std::optional<double> high;
  std::optional<double> low;
};

HighLowMeans ComputeHighLowMeans(std::span<const DatasetEntry> entries,
                                 std::span<const ScoredEntry> scored);

// Fraction of `iterations` shuffles of the human scores whose |rho| reaches
// the observed |rho|. Requires iterations >= 1000.
double PermutationPValue(std::span<const double> model_scores,
                         std::span<const double> human_scores, std::size_t iterations,
                         std::uint64_t seed);

struct EvaluationReport {
  std::string model;
  std::optional<double> high_mean;
  std::optional<double> low_mean;
  std::optional<double> rho;  // absent with fewer than two distinct model scores
  std::optional<double> p_value;
  std::size_t entries = 0;
  std::size_t skipped = 0;
};

struct EvaluationOptions {
  std::size_t permutations = 0;  // 0 disables the permutation test
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

EvaluationReport EvaluateModel(std::span<const DatasetEntry> entries, ModelKind kind,
                               const Lexicons& lexicons, const EvaluationOptions& options = {});

// One report per model in the given order; a baseline report is put first
// when the list does not already contain one.
std::vector<EvaluationReport> EvaluateModels(std::span<const DatasetEntry> entries,
                                             std::span<const ModelKind> models,
                                             const Lexicons& lexicons,
                                             const EvaluationOptions& options = {});

// Fixed-width `Model High Low rho` table, two decimals, "-" for absent values.
std::string RenderReport(std::span<const EvaluationReport> reports);
std::string ReportJson(std::span<const EvaluationReport> reports);

}  // namespace catdist

#endif  // CATDIST_EVAL_H_
