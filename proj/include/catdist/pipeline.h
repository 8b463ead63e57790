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

// Pipeline stages behind the `catdist` command line tool.
//
// Every stage reads its inputs from explicit paths or from the artifacts of
// earlier stages in the output directory, writes its own artifacts through a
// temporary file that is renamed on success, and records a manifest
// (`manifest-<stage>.json`) with the effective configuration and the SHA-256
// of every input and output. Stages are deterministic: the same configuration
// and inputs give byte-identical artifacts and manifests.
//
// Artifacts, by stage:
//   count      counts.tsv
//   basis      vocab.txt
//   vectors    vectors.tsv
//   relations  relations.tsv
//   train      lexicon.tsv
//   eval       (report on stdout) manifest only

#ifndef CATDIST_PIPELINE_H_
#define CATDIST_PIPELINE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "catdist/compose.h"
#include "catdist/corpus.h"
#include "catdist/eval.h"
#include "catdist/relational.h"

namespace catdist {

inline constexpr std::string_view kVersion = "catdist 0.1.0";

struct PipelineConfig {
  std::string corpus;
  int window = 5;
  std::size_t basis_size = 2000;
  WeightingKind weighting = WeightingKind::kProbabilityRatio;
  std::string stoplist;   // optional
  std::string relations;  // user relations file; empty with extract = true
  bool extract = false;   // use the heuristic extractor on the corpus
  Accumulation accumulation = Accumulation::kSum;
  std::string output_dir = ".";
  std::uint64_t seed = 42;
  unsigned threads = 1;

  // Explicit inputs; empty means the artifact in output_dir.
  std::string counts;
  std::string vocab;
  std::string vectors;
  std::string lexicon;

  // Sets one key (same names as the config file). Throws
  // std::invalid_argument on an unknown key or bad value.
  void Set(std::string_view key, std::string_view value);
  void Validate() const;

  // The keys and values recorded in manifests. Input paths are reduced to
  // their file names; output_dir and threads are left out because they do
  // not affect any artifact.
  std::map<std::string, std::string> Recorded() const;

  std::string ArtifactPath(std::string_view name) const;
};

// Flat `key=value` lines; `#` starts a comment. Throws ParseError.
std::map<std::string, std::string> ReadConfigFile(const std::string& path);

std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::string& path);

void RunCount(const PipelineConfig& config);
void RunBasis(const PipelineConfig& config);
void RunVectors(const PipelineConfig& config);
void RunRelations(const PipelineConfig& config);
void RunTrain(const PipelineConfig& config);

// Returns the serialized tensor followed by a `norm=<value>` line.
std::string RunCompose(const PipelineConfig& config, ModelKind model, Pattern pattern,
                       const std::vector<std::string>& words);

struct EvalRequest {
  std::string dataset;
  DatasetArity arity = DatasetArity::kTransitive;
  std::vector<ModelKind> models = {ModelKind::kCategorical, ModelKind::kAdditive,
                                   ModelKind::kMultiplicative, ModelKind::kBaseline};
  bool json = false;
  std::size_t permutations = 0;
};

// Returns the rendered report (table or JSON).
std::string RunEval(const PipelineConfig& config, const EvalRequest& request);

// `REDUCES cups=(i,j),... head=<w>` or `IRREDUCIBLE`. Each element of
// `word_types` is one word's type. head is `none` when the reduction is not a
// head/argument structure.
std::string PregroupCheck(const std::vector<std::string>& word_types, std::string_view target);

}  // namespace catdist

#endif  // CATDIST_PIPELINE_H_
