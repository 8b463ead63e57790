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

// Command line front end for the categorical compositional pipeline.
//
//   catdist count     --corpus corpus.txt --out build/
//   catdist basis     --out build/ -k 2000
//   catdist vectors   --out build/
//   catdist relations --out build/ --extract --corpus corpus.txt
//   catdist train     --out build/
//   catdist compose   --out build/ --model categorical --pattern transitive table show result
//   catdist eval      --out build/ --dataset dataset.txt --arity transitive
//   catdist pregroup-check n "n^r s n^l" n --target s
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 missing prerequisite.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "catdist/error.h"
#include "catdist/pipeline.h"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kMissingPrerequisite = 3;

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Categorical compositional distributional semantics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  app.add_option("--config", config_file, "Flat key=value configuration file");

  // Flags mirroring configuration keys; a given flag overrides the file.
  std::map<std::string, std::string> flags;
  auto keyed = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(
        name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  keyed("--corpus", "corpus", "Lemmatised corpus, one sentence per line");
  keyed("--window", "window", "Context window, tokens per side (default 5)");
  keyed("-k,--basis-size", "basis_size", "Number of basis words (default 2000)");
  keyed("--weighting", "weighting", "probability-ratio or tf-idf");
  keyed("--stoplist", "stoplist", "Lemmas excluded from the basis, one per line");
  keyed("--relations", "relations", "Relations file head<TAB>arity<TAB>args...");
  keyed("--accumulation", "accumulation", "sum or product");
  keyed("--out", "output_dir", "Output directory for artifacts");
  keyed("--seed", "seed", "Random seed for the permutation test");
  keyed("--threads", "threads", "Worker threads (default: hardware concurrency)");
  keyed("--counts", "counts", "counts.tsv to read instead of <out>/counts.tsv");
  keyed("--vocab", "vocab", "vocab.txt to read instead of <out>/vocab.txt");
  keyed("--vectors", "vectors", "vectors.tsv to read instead of <out>/vectors.tsv");
  keyed("--lexicon", "lexicon", "lexicon.tsv to read instead of <out>/lexicon.tsv");
  bool extract = false;
  app.add_flag("--extract", extract, "Extract relations heuristically from the tagged corpus");

  app.add_subcommand("count", "Count co-occurrences -> counts.tsv");
  app.add_subcommand("basis", "Select the basis words -> vocab.txt");
  app.add_subcommand("vectors", "Build weighted word vectors -> vectors.tsv");
  app.add_subcommand("relations", "Ingest or extract relation instances -> relations.tsv");
  app.add_subcommand("train", "Learn relational tensors -> lexicon.tsv");

  auto* compose = app.add_subcommand("compose", "Compose a phrase and print its tensor");
  std::string model_name = "categorical";
  std::string pattern_name = "transitive";
  std::vector<std::string> words;
  compose->add_option("--model", model_name, "categorical, add, multiply or baseline");
  compose->add_option("--pattern", pattern_name,
                      "intransitive, transitive, modified-intransitive, modified-transitive, "
                      "adjective-noun");
  compose->add_option("words", words, "Lemmas in surface order ('-' for an absent modifier)")
      ->required();

  auto* eval = app.add_subcommand("eval", "Evaluate models on a disambiguation dataset");
  catdist::EvalRequest request;
  std::string arity_name = "transitive";
  std::string models = "categorical,add,multiply,baseline";
  eval->add_option("--dataset", request.dataset, "Dataset file")->required();
  eval->add_option("--arity", arity_name, "intransitive or transitive");
  eval->add_option("--models", models, "Comma-separated model list");
  eval->add_flag("--json", request.json, "Emit JSON instead of a table");
  eval->add_option("--permutations", request.permutations,
                   "Permutation test iterations (0 = off, otherwise >= 1000)");

  auto* pregroup = app.add_subcommand("pregroup-check", "Reduce a sequence of pregroup types");
  std::vector<std::string> types;
  std::string target = "s";
  pregroup->add_option("types", types, "One type per word, e.g. n \"n^r s n^l\" n")->required();
  pregroup->add_option("--target", target, "Target atom");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    catdist::PipelineConfig config;
    config.threads = std::max(1u, std::thread::hardware_concurrency());
    if (!config_file.empty()) {
      for (const auto& [k, v] : catdist::ReadConfigFile(config_file)) config.Set(k, v);
    }
    for (const auto& [k, v] : flags) config.Set(k, v);
    if (extract) config.extract = true;

    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "count") {
      catdist::RunCount(config);
    } else if (name == "basis") {
      catdist::RunBasis(config);
    } else if (name == "vectors") {
      catdist::RunVectors(config);
    } else if (name == "relations") {
      catdist::RunRelations(config);
    } else if (name == "train") {
      catdist::RunTrain(config);
    } else if (name == "compose") {
      std::cout << catdist::RunCompose(config, catdist::ParseModel(model_name),
                                       catdist::ParsePattern(pattern_name), words);
    } else if (name == "eval") {
      request.arity = catdist::ParseDatasetArity(arity_name);
      request.models.clear();
      for (const std::string& m : SplitComma(models)) {
        request.models.push_back(catdist::ParseModel(m));
      }
      std::cout << catdist::RunEval(config, request);
    } else if (name == "pregroup-check") {
      std::cout << catdist::PregroupCheck(types, target) << '\n';
    }
  } catch (const catdist::MissingPrerequisite& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMissingPrerequisite;
  } catch (const catdist::ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
