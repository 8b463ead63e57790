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

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "catdist/error.h"
#include "catdist/log.h"
#include "catdist/pregroup.h"
#include "text_util.h"

namespace catdist {
namespace fs = std::filesystem;
namespace {

std::string ReadWhole(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingPrerequisite("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to `<path>.tmp` and renames over `path` only once `fill` succeeded.
void AtomicWrite(const std::string& path, const std::function<void(std::ostream&)>& fill) {
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::string tmp = path + ".tmp";
  try {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    fill(out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
  } catch (...) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw;
  }
  fs::rename(tmp, target);
}

std::string BoolString(bool b) { return b ? "true" : "false"; }

bool ParseBool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected a boolean, got '" + std::string(v) + "'");
}

template <typename Int>
Int ParseNumber(std::string_view key, std::string_view v) {
  auto n = internal::ParseInt<Int>(v);
  if (!n) throw std::invalid_argument(std::string(key) + ": expected an integer, got '" +
                                      std::string(v) + "'");
  return *n;
}

// Tracks the files a stage read and wrote and emits its manifest.
class Manifest {
 public:
  Manifest(const PipelineConfig& config, std::string stage)
      : config_(config), stage_(std::move(stage)) {}

  // Returns `path` after checking it exists.
  std::string Input(const std::string& role, const std::string& path) {
    if (!fs::exists(path)) {
      throw MissingPrerequisite("missing " + role + " input '" + path + "'" + Hint(role));
    }
    inputs_[role] = {{"file", fs::path(path).filename().string()}, {"sha256", Sha256File(path)}};
    return path;
  }

  // The explicit path if set, else the named artifact in the output directory.
  std::string Artifact(const std::string& role, const std::string& explicit_path,
                       std::string_view name) {
    return Input(role, explicit_path.empty() ? config_.ArtifactPath(name) : explicit_path);
  }

  void Output(const std::string& role, const std::string& path,
              const std::function<void(std::ostream&)>& fill) {
    AtomicWrite(path, fill);
    outputs_[role] = {{"file", fs::path(path).filename().string()},
                      {"sha256", Sha256File(path)}};
  }

  void Finish() {
    nlohmann::json doc;
    doc["stage"] = stage_;
    doc["version"] = kVersion;
    doc["config"] = config_.Recorded();
    doc["inputs"] = inputs_;
    doc["outputs"] = outputs_;
    std::string text = doc.dump(2) + "\n";
    AtomicWrite(config_.ArtifactPath("manifest-" + stage_ + ".json"),
                [&](std::ostream& out) { out << text; });
  }

 private:
  static std::string Hint(const std::string& role) {
    static const std::map<std::string, std::string> producer = {
        {"counts", "count"}, {"vocab", "basis"}, {"vectors", "vectors"},
        {"relations", "relations"}, {"lexicon", "train"}};
    auto it = producer.find(role);
    return it == producer.end() ? "" : "; run `catdist " + it->second + "` first";
  }

  const PipelineConfig& config_;
  std::string stage_;
  nlohmann::json inputs_ = nlohmann::json::object();
  nlohmann::json outputs_ = nlohmann::json::object();
};

template <typename T, typename Reader>
T ReadFile(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw MissingPrerequisite("cannot read '" + path + "'");
  return reader(in);
}

}  // namespace

void PipelineConfig::Set(std::string_view key, std::string_view value) {
  if (key == "corpus") {
    corpus = value;
  } else if (key == "window") {
    window = ParseNumber<int>(key, value);
  } else if (key == "basis_size" || key == "k") {
    basis_size = ParseNumber<std::size_t>(key, value);
  } else if (key == "weighting") {
    weighting = ParseWeighting(value);
  } else if (key == "stoplist") {
    stoplist = value;
  } else if (key == "relations") {
    relations = value;
  } else if (key == "extract") {
    extract = ParseBool(value);
  } else if (key == "accumulation") {
    accumulation = ParseAccumulation(value);
  } else if (key == "output_dir" || key == "out") {
    output_dir = value;
  } else if (key == "seed") {
    seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "threads") {
    threads = ParseNumber<unsigned>(key, value);
  } else if (key == "counts") {
    counts = value;
  } else if (key == "vocab") {
    vocab = value;
  } else if (key == "vectors") {
    vectors = value;
  } else if (key == "lexicon") {
    lexicon = value;
  } else {
    throw std::invalid_argument("unknown configuration key '" + std::string(key) + "'");
  }
}

void PipelineConfig::Validate() const {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (basis_size < 1) throw std::invalid_argument("basis_size must be >= 1");
  if (output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
}

std::map<std::string, std::string> PipelineConfig::Recorded() const {
  // Paths are recorded by file name; the input hashes identify the content.
  auto name = [](const std::string& path) { return fs::path(path).filename().string(); };
  return {{"corpus", name(corpus)},
          {"window", std::to_string(window)},
          {"basis_size", std::to_string(basis_size)},
          {"weighting", std::string(WeightingName(weighting))},
          {"stoplist", name(stoplist)},
          {"relations", name(relations)},
          {"extract", BoolString(extract)},
          {"accumulation", std::string(AccumulationName(accumulation))},
          {"seed", std::to_string(seed)},
          {"counts", name(counts)},
          {"vocab", name(vocab)},
          {"vectors", name(vectors)},
          {"lexicon", name(lexicon)}};
}

std::string PipelineConfig::ArtifactPath(std::string_view name) const {
  return (fs::path(output_dir) / std::string(name)).string();
}

std::map<std::string, std::string> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingPrerequisite("cannot read config '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_number = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
      s.remove_suffix(1);
    }
    return s;
  };
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_number);
    std::string key(trim(view.substr(0, eq)));
    if (key.empty()) throw ParseError("empty key", line_number);
    values[key] = trim(view.substr(eq + 1));
  }
  return values;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

std::string Sha256File(const std::string& path) { return Sha256Hex(ReadWhole(path)); }

void RunCount(const PipelineConfig& config) {
  config.Validate();
  if (config.corpus.empty()) throw std::invalid_argument("count needs a corpus (corpus=...)");
  Manifest manifest(config, "count");
  std::string corpus = manifest.Input("corpus", config.corpus);
  CooccurrenceModel model = CountCorpusFile(corpus, config.window, config.threads);
  manifest.Output("counts", config.ArtifactPath("counts.tsv"),
                  [&](std::ostream& out) { WriteCounts(out, model); });
  manifest.Finish();
}

void RunBasis(const PipelineConfig& config) {
  config.Validate();
  Manifest manifest(config, "basis");
  auto model = ReadFile<CooccurrenceModel>(
      manifest.Artifact("counts", config.counts, "counts.tsv"), ReadCounts);
  std::set<std::string> stoplist;
  if (!config.stoplist.empty()) {
    stoplist = ReadFile<std::set<std::string>>(manifest.Input("stoplist", config.stoplist),
                                               ReadStoplist);
  }
  VocabIndex vocab = SelectBasis(model, config.basis_size, stoplist);
  if (vocab.size() < config.basis_size) {
    LogWarning("only " + std::to_string(vocab.size()) + " basis words available");
  }
  manifest.Output("vocab", config.ArtifactPath("vocab.txt"),
                  [&](std::ostream& out) { WriteVocab(out, vocab); });
  manifest.Finish();
}

void RunVectors(const PipelineConfig& config) {
  config.Validate();
  Manifest manifest(config, "vectors");
  auto model = ReadFile<CooccurrenceModel>(
      manifest.Artifact("counts", config.counts, "counts.tsv"), ReadCounts);
  std::string vocab_path = manifest.Artifact("vocab", config.vocab, "vocab.txt");
  auto vocab = ReadFile<VocabIndex>(vocab_path, ReadVocab);
  if (vocab.empty()) throw DataError("basis is empty");
  WeightingScheme scheme{config.weighting, config.window, config.basis_size};
  VectorLexicon lexicon =
      BuildLexicon(model, vocab, scheme, fs::path(vocab_path).filename().string());
  manifest.Output("vectors", config.ArtifactPath("vectors.tsv"),
                  [&](std::ostream& out) { WriteVectorLexicon(out, lexicon); });
  manifest.Finish();
}

void RunRelations(const PipelineConfig& config) {
  config.Validate();
  Manifest manifest(config, "relations");
  std::vector<RelationInstance> relations;
  if (!config.relations.empty()) {
    std::size_t rejected = 0;
    relations = ReadFile<std::vector<RelationInstance>>(
        manifest.Input("relations_source", config.relations),
        [&](std::istream& in) { return ReadRelations(in, &rejected); });
  } else if (config.extract) {
    if (config.corpus.empty()) throw std::invalid_argument("extraction needs a corpus");
    relations = ReadFile<std::vector<RelationInstance>>(
        manifest.Input("corpus", config.corpus),
        [](std::istream& in) { return ExtractRelations(ReadCorpus(in)); });
  } else {
    throw std::invalid_argument("relations needs relations=<file> or extract=true");
  }
  manifest.Output("relations", config.ArtifactPath("relations.tsv"),
                  [&](std::ostream& out) { WriteRelations(out, relations); });
  manifest.Finish();
}

void RunTrain(const PipelineConfig& config) {
  config.Validate();
  Manifest manifest(config, "train");
  auto relations = ReadFile<std::vector<RelationInstance>>(
      manifest.Artifact("relations", "", "relations.tsv"),
      [](std::istream& in) { return ReadRelations(in); });
  auto vectors = ReadFile<VectorLexicon>(
      manifest.Artifact("vectors", config.vectors, "vectors.tsv"), ReadVectorLexicon);
  RelationalLexicon lexicon = LearnLexicon(relations, vectors, config.accumulation);
  manifest.Output("lexicon", config.ArtifactPath("lexicon.tsv"),
                  [&](std::ostream& out) { WriteRelationalLexicon(out, lexicon); });
  manifest.Finish();
}

std::string RunCompose(const PipelineConfig& config, ModelKind model, Pattern pattern,
                       const std::vector<std::string>& words) {
  config.Validate();
  PhraseSpec spec = PhraseSpec::FromWords(pattern, words);
  Manifest manifest(config, "compose");
  auto vectors = ReadFile<VectorLexicon>(
      manifest.Artifact("vectors", config.vectors, "vectors.tsv"), ReadVectorLexicon);
  RelationalLexicon relations(vectors.dim);
  if (model == ModelKind::kCategorical) {
    relations = ReadFile<RelationalLexicon>(
        manifest.Artifact("lexicon", config.lexicon, "lexicon.tsv"), ReadRelationalLexicon);
  }
  SemanticTensor result = Compose(model, spec, {vectors, relations});
  return SerializeTensor(result) + "norm=" + FormatWeight(Norm(result)) + "\n";
}

std::string RunEval(const PipelineConfig& config, const EvalRequest& request) {
  config.Validate();
  if (request.dataset.empty()) throw std::invalid_argument("eval needs --dataset");
  Manifest manifest(config, "eval");
  auto entries = LoadDatasetFile(manifest.Input("dataset", request.dataset), request.arity);
  auto vectors = ReadFile<VectorLexicon>(
      manifest.Artifact("vectors", config.vectors, "vectors.tsv"), ReadVectorLexicon);
  RelationalLexicon relations(vectors.dim);
  if (std::find(request.models.begin(), request.models.end(), ModelKind::kCategorical) !=
      request.models.end()) {
    relations = ReadFile<RelationalLexicon>(
        manifest.Artifact("lexicon", config.lexicon, "lexicon.tsv"), ReadRelationalLexicon);
  }
  EvaluationOptions options{request.permutations, config.seed, config.threads};
  auto reports = EvaluateModels(entries, request.models, {vectors, relations}, options);
  manifest.Finish();
  return request.json ? ReportJson(reports) : RenderReport(reports);
}

std::string PregroupCheck(const std::vector<std::string>& word_types, std::string_view target) {
  std::vector<PregroupType> types;
  for (const std::string& t : word_types) types.push_back(ParseType(t));
  auto witness = Reduce(types, target);
  if (!witness) return "IRREDUCIBLE";
  std::string out = "REDUCES cups=";
  for (std::size_t i = 0; i < witness->cups.size(); ++i) {
    if (i) out += ',';
    out += "(" + std::to_string(witness->cups[i].first) + "," +
           std::to_string(witness->cups[i].second) + ")";
  }
  std::string head = "none";
  try {
    head = std::to_string(MakeRecipe(*witness, types).head);
  } catch (const UnsupportedStructure&) {
  }
  return out + " head=" + head;
}

}  // namespace catdist
