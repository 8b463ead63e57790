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

#include "catdist/pipeline.h"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "catdist/error.h"
#include "catdist/log.h"
#include "test_support.h"

namespace catdist {
namespace {

namespace fs = std::filesystem;
using testing::kFixtureDir;

std::string TempDir(const std::string& name) {
  return (fs::temp_directory_path() / ("catdist_test_" + name)).string();
}

struct QuietWarnings {
  QuietWarnings() : previous(SetWarningSink({})) {}
  ~QuietWarnings() { SetWarningSink(previous); }
  LogSink previous;
};

TEST_CASE("sha256 of known strings") {
  CHECK(Sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("config keys and validation") {
  PipelineConfig c;
  c.Set("window", "3");
  c.Set("k", "100");
  c.Set("weighting", "tf-idf");
  c.Set("out", "/tmp/x");
  c.Set("extract", "true");
  CHECK(c.window == 3);
  CHECK(c.basis_size == 100);
  CHECK(c.weighting == WeightingKind::kTfIdf);
  CHECK(c.output_dir == "/tmp/x");
  CHECK(c.extract);
  CHECK_THROWS_AS(c.Set("colour", "red"), std::invalid_argument);
  CHECK_THROWS_AS(c.Set("window", "three"), std::invalid_argument);
  c.window = 0;
  CHECK_THROWS_AS(c.Validate(), std::invalid_argument);

  PipelineConfig d;
  d.corpus = "/some/where/corpus.txt";
  d.threads = 8;
  auto rec = d.Recorded();
  CHECK(rec.at("corpus") == "corpus.txt");
  CHECK(rec.count("threads") == 0);
  CHECK(rec.count("output_dir") == 0);
}

TEST_CASE("config file reading") {
  auto kv = ReadConfigFile(kFixtureDir + "/toy.conf");
  CHECK(kv.at("window") == "3");
  CHECK(kv.at("extract") == "true");
  std::string path = TempDir("bad.conf");
  std::ofstream(path) << "window=3\nnot a pair\n";
  CHECK_THROWS_AS(ReadConfigFile(path), ParseError);
  CHECK_THROWS_AS(ReadConfigFile(TempDir("missing.conf")), MissingPrerequisite);
}

TEST_CASE("pregroup check output") {
  CHECK(PregroupCheck({"n", "n^r s n^l", "n"}, "s") == "REDUCES cups=(0,1),(3,4) head=1");
  CHECK(PregroupCheck({"n", "n"}, "s") == "IRREDUCIBLE");
  CHECK(PregroupCheck({"n n^r s"}, "s") == "REDUCES cups=(0,1) head=none");
}

TEST_CASE("toy pipeline is deterministic across runs and thread counts") {
  QuietWarnings quiet;
  auto a = testing::RunToyPipeline(TempDir("run_a"), 1);
  auto b = testing::RunToyPipeline(TempDir("run_b"), 4);
  CHECK(a.size() == b.size());
  for (const auto& [name, bytes] : a) {
    INFO(name);
    REQUIRE(b.count(name) == 1);
    CHECK(b.at(name) == bytes);
  }
  for (const char* name : {"counts.tsv", "vocab.txt", "vectors.tsv", "relations.tsv",
                           "lexicon.tsv", "manifest-count.json", "manifest-eval.json"}) {
    CHECK(a.count(name) == 1);
  }
}

TEST_CASE("manifests hash their inputs and outputs") {
  QuietWarnings quiet;
  std::string dir = TempDir("manifest");
  auto files = testing::RunToyPipeline(dir, 1);
  auto m = nlohmann::json::parse(files.at("manifest-vectors.json"));
  CHECK(m["stage"] == "vectors");
  CHECK(m["outputs"]["vectors"]["sha256"] == Sha256Hex(files.at("vectors.tsv")));
  CHECK(m["inputs"]["counts"]["sha256"] == Sha256Hex(files.at("counts.tsv")));
  CHECK(m["inputs"]["vocab"]["sha256"] == Sha256Hex(files.at("vocab.txt")));
  CHECK(m["config"]["window"] == "3");
}

TEST_CASE("artifacts reload to what the library computes") {
  QuietWarnings quiet;
  std::string dir = TempDir("reload");
  auto files = testing::RunToyPipeline(dir, 2);
  std::ifstream corpus_in(kFixtureDir + "/corpus.txt");
  auto corpus = ReadCorpus(corpus_in);
  auto model = CountCooccurrences(corpus, 3);
  std::istringstream counts(files.at("counts.tsv"));
  CHECK(ReadCounts(counts) == model);
  VocabIndex vocab = SelectBasis(model, 8);
  std::istringstream vocab_in(files.at("vocab.txt"));
  CHECK(ReadVocab(vocab_in).words() == vocab.words());
}

TEST_CASE("missing prerequisites name the stage to run") {
  QuietWarnings quiet;
  PipelineConfig config;
  config.output_dir = TempDir("empty");
  fs::remove_all(config.output_dir);
  fs::create_directories(config.output_dir);
  try {
    RunVectors(config);
    FAIL("expected MissingPrerequisite");
  } catch (const MissingPrerequisite& e) {
    CHECK(std::string(e.what()).find("catdist count") != std::string::npos);
  }
  CHECK_THROWS_AS(RunTrain(config), MissingPrerequisite);
  CHECK_THROWS_AS(RunRelations(config), std::invalid_argument);
}

TEST_CASE("training from the bundled sample vectors") {
  QuietWarnings quiet;
  PipelineConfig config;
  config.output_dir = TempDir("sample");
  fs::remove_all(config.output_dir);
  fs::create_directories(config.output_dir);
  config.relations = kFixtureDir + "/relations.tsv";
  config.vectors = kFixtureDir + "/vectors.tsv";
  RunRelations(config);
  RunTrain(config);
  std::ifstream in(config.ArtifactPath("lexicon.tsv"));
  RelationalLexicon lex = ReadRelationalLexicon(in);
  const auto* show = lex.find("show", 2);
  REQUIRE(show != nullptr);
  CHECK(show->k == 2);
  CHECK(std::abs(show->tensor.at({0, 0}) - 79.24) <= 1e-9);

  std::string out = RunCompose(config, ModelKind::kCategorical, Pattern::kTransitive,
                               {"table", "show", "result"});
  CHECK(out.rfind("order=2 dim=4\n", 0) == 0);
  CHECK(out.find("norm=") != std::string::npos);

  EvalRequest request;
  request.dataset = kFixtureDir + "/dataset.txt";
  request.json = true;
  auto doc = nlohmann::json::parse(RunEval(config, request));
  REQUIRE(doc.size() == 4);
  CHECK(doc[0]["model"] == "categorical");
  CHECK(doc[3]["model"] == "baseline");
  CHECK(doc[0]["entries"] == 6);
}

}  // namespace
}  // namespace catdist
