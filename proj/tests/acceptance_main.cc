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

// End-to-end acceptance checks. Prints one PASS/FAIL line per check and exits
// non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "catdist/compose.h"
#include "catdist/corpus.h"
#include "catdist/eval.h"
#include "catdist/log.h"
#include "catdist/pregroup.h"
#include "catdist/relational.h"
#include "test_support.h"

namespace catdist {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string Fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

// --- show matrix ------------------------------------------------------------

Outcome ShowMatrix() {
  Outcome o;
  auto relations = testing::ShowRelations();
  SemanticTensor show = LearnTensor("show", relations, testing::SampleLexicon(), 2).tensor;
  auto oracle = testing::ShowMatrixOracle();
  int oracle_ok = 0;
  for (std::uint32_t i = 0; i < 4; ++i) {
    for (std::uint32_t j = 0; j < 4; ++j) {
      if (std::abs(show.at({i, j}) - oracle[i * 4 + j]) <= 1e-9) ++oracle_ok;
    }
  }
  if (oracle_ok != 16) o.Fail(std::to_string(16 - oracle_ok) + " cells differ from the oracle");

  struct Cell {
    std::uint32_t i, j;
    double value;
  };
  // Printed values, (row, column) over (far, room, scientific, elect).
  const Cell printed[] = {{0, 0, 79.24},  {0, 1, 47.41},  {0, 2, 119.96}, {0, 3, 27.72},
                          {1, 0, 232.66}, {1, 1, 80.75},  {1, 2, 396.14}};
  // Printed values that disagree with the inputs; checked against the oracle.
  const Cell corrected[] = {{1, 3, 113.4}, {2, 0, 31.86}, {2, 1, 39.42}};
  for (const Cell& c : printed) {
    double got = show.at({c.i, c.j});
    if (std::abs(got - c.value) > 1e-9) {
      o.Fail("cell (" + std::to_string(c.i) + "," + std::to_string(c.j) + ") = " +
             Fmt("%.6g", got) + ", printed " + Fmt("%.6g", c.value) + ", |diff| " +
             Fmt("%.3g", std::abs(got - c.value)));
    }
  }
  for (const Cell& c : corrected) {
    if (std::abs(show.at({c.i, c.j}) - c.value) > 1e-9) {
      o.Fail("corrected cell (" + std::to_string(c.i) + "," + std::to_string(c.j) + ") wrong");
    }
  }
  if (o.pass) o.detail = "16/16 oracle cells, 7 printed cells, 3 corrected cells";
  return o;
}

// --- inner-product expansion --------------------------------------------------

Outcome Expansion() {
  Outcome o;
  std::mt19937_64 rng(2011);
  std::uniform_int_distribution<std::size_t> pick_dim(1, 8);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t dim = pick_dim(rng);
    auto sub = testing::RandomDense(rng, dim, density(rng), -5.0, 5.0);
    auto obj = testing::RandomDense(rng, dim, density(rng), -5.0, 5.0);
    auto verb = testing::RandomDense(rng, dim * dim, density(rng), -5.0, 5.0);

    // Σ_ij c_ij <sub, n_i> <obj, n_j> (n_i ⊗ n_j), each inner product taken
    // against an explicit basis vector.
    std::vector<double> expansion(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        double si = 0.0, oj = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          si += sub[k] * (k == i ? 1.0 : 0.0);
          oj += obj[k] * (k == j ? 1.0 : 0.0);
        }
        expansion[i * dim + j] += verb[i * dim + j] * si * oj;
      }
    }

    VectorLexicon vectors;
    vectors.dim = dim;
    vectors.vectors.emplace("s", testing::DenseVector(sub));
    vectors.vectors.emplace("o", testing::DenseVector(obj));
    RelationalLexicon relations(dim);
    relations.Insert("v", 2, {SemanticTensor::FromDense(2, dim, verb), 1});
    auto got = ComposeCategorical(PhraseSpec::Transitive("s", "v", "o"), vectors, relations)
                   .ToDense();
    for (std::size_t k = 0; k < got.size(); ++k) {
      if (std::abs(got[k] - expansion[k]) > 1e-9) {
        ++bad;
        break;
      }
    }
  }
  if (bad) o.Fail(std::to_string(bad) + " of 1000 trials differ");
  else o.detail = "1000/1000 trials within 1e-9";
  return o;
}

// --- word order -------------------------------------------------------------

template <typename T>
T ReadFixture(const std::string& name, const std::function<T(std::istream&)>& read) {
  std::ifstream in(testing::kFixtureDir + "/" + name);
  if (!in) throw std::runtime_error("cannot open fixture " + name);
  return read(in);
}

Outcome WordOrder() {
  Outcome o;
  auto vectors = ReadFixture<VectorLexicon>("vectors.tsv", ReadVectorLexicon);
  auto relations = ReadFixture<std::vector<RelationInstance>>(
      "relations.tsv", [](std::istream& in) { return ReadRelations(in); });
  RelationalLexicon lexicon = LearnLexicon(relations, vectors);
  Lexicons lex{vectors, lexicon};
  const std::vector<std::string> nouns = {"table", "map", "result", "location"};
  for (const auto& [key, entry] : lexicon.entries()) {
    if (key.second != 2) continue;
    for (const auto& a : nouns) {
      for (const auto& b : nouns) {
        if (a == b) continue;
        auto ab = PhraseSpec::Transitive(a, key.first, b);
        auto ba = PhraseSpec::Transitive(b, key.first, a);
        double cat = Similarity(ab, ba, ModelKind::kCategorical, lex);
        double add = Similarity(ab, ba, ModelKind::kAdditive, lex);
        if (cat < 0.999 && add == 1.0) {
          o.detail = a + " " + key.first + " " + b + ": categorical " + Fmt("%.4f", cat) +
                     ", additive " + Fmt("%.17g", add);
          return o;
        }
      }
    }
  }
  o.Fail("no verb and noun pair separates the two orders");
  return o;
}

// --- pregroup ----------------------------------------------------------------

Outcome Pregroup() {
  Outcome o;
  std::vector<PregroupType> sentence = {ParseType("n"), ParseType("n^r"), ParseType("s"),
                                        ParseType("n^l"), ParseType("n")};
  auto w = Reduce(sentence, "s");
  if (!w || w->cups != std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {3, 4}}) {
    o.Fail("n n^r s n^l n did not give cups {(0,1),(3,4)}");
  }
  if (Reduce(std::vector<PregroupType>{ParseType("n"), ParseType("n")}, "s")) {
    o.Fail("n n reduced");
  }

  const std::vector<SimpleTerm> alphabet = {{"n", -1}, {"n", 0}, {"n", 1},
                                            {"s", -1}, {"s", 0}, {"s", 1}};
  testing::ContractionOracle oracle;
  std::size_t total = 0, agree = 0, reducible = 0;
  for (std::size_t len = 1; len <= 8; ++len) {
    std::vector<std::size_t> digits(len, 0);
    std::vector<PregroupType> types(len);
    std::vector<testing::ContractionOracle::Term> raw(len);
    while (true) {
      for (std::size_t k = 0; k < len; ++k) {
        types[k].terms = {alphabet[digits[k]]};
        raw[k] = {alphabet[digits[k]].base, alphabet[digits[k]].adjoint};
      }
      auto got = Reduce(types, "s");
      bool expected = oracle.ReducesTo(raw, "s");
      bool ok = got.has_value() == expected;
      if (ok && got) ok = !ValidateWitness(*got, Concatenate(types)).has_value();
      agree += ok;
      reducible += expected;
      ++total;
      std::size_t k = 0;
      while (k < len && ++digits[k] == alphabet.size()) digits[k++] = 0;
      if (k == len) break;
    }
  }
  if (agree != total) {
    o.Fail(std::to_string(total - agree) + " of " + std::to_string(total) + " sequences disagree");
  }
  if (o.pass) {
    o.detail = std::to_string(total) + " sequences (" + std::to_string(reducible) +
               " reducible), 100% agreement";
  }
  return o;
}

// --- spearman ----------------------------------------------------------------

Outcome Spearman() {
  Outcome o;
  std::vector<double> a = {1, 2, 3, 4}, rev = {4, 3, 2, 1}, swap = {1, 3, 2, 4};
  if (std::abs(SpearmanRho(a, a) - 1.0) > 1e-12) o.Fail("identical != 1");
  if (std::abs(SpearmanRho(a, rev) + 1.0) > 1e-12) o.Fail("reversed != -1");
  if (std::abs(SpearmanRho(a, swap) - 0.8) > 1e-12) o.Fail("single swap != 0.8");

  std::mt19937_64 rng(500);
  std::uniform_int_distribution<int> len(2, 60), levels(2, 7);
  int done = 0, bad = 0;
  double worst = 0.0;
  while (done < 500) {
    std::vector<double> x(len(rng)), y(x.size());
    std::uniform_int_distribution<int> vx(1, levels(rng)), vy(1, levels(rng));
    for (auto& v : x) v = vx(rng);
    for (auto& v : y) v = vy(rng);
    auto constant = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [&](double e) { return e == v[0]; });
    };
    if (constant(x) || constant(y)) continue;
    double diff = std::abs(SpearmanRho(x, y) - testing::OracleSpearman(x, y));
    worst = std::max(worst, diff);
    if (diff > 1e-9) ++bad;
    ++done;
  }
  if (bad) o.Fail(std::to_string(bad) + " of 500 tied lists differ from the oracle");
  if (o.pass) o.detail = "500 tied lists, max |diff| " + Fmt("%.2g", worst);
  return o;
}

// --- synthetic disambiguation --------------------------------------------------

Outcome Synthetic() {
  Outcome o;
  testing::SyntheticTask task = testing::MakeSyntheticTask(20110101, 40);
  std::vector<Sentence> corpus;
  for (std::size_t i = 0; i < task.corpus_lines.size(); ++i) {
    corpus.push_back(ParseCorpusLine(task.corpus_lines[i], i + 1));
  }
  CooccurrenceModel model = CountCooccurrences(corpus, 5, 2);
  VocabIndex basis = SelectBasis(model, 24);
  VectorLexicon vectors = BuildLexicon(model, basis, WeightingScheme{});
  auto relations = ExtractRelations(corpus);
  RelationalLexicon lexicon = LearnLexicon(relations, vectors);
  Lexicons lex{vectors, lexicon};

  std::vector<ModelKind> models = {ModelKind::kCategorical, ModelKind::kBaseline};
  auto reports = EvaluateModels(task.dataset, models, lex);
  const EvaluationReport& cat = reports[0];
  const EvaluationReport& base = reports[1];
  if (cat.entries != 40) o.Fail("categorical scored " + std::to_string(cat.entries) + " rows");
  if (!cat.rho) o.Fail("categorical rho undefined");
  // A constant baseline has no rank correlation; count it as 0.
  double base_rho = base.rho.value_or(0.0);
  if (cat.rho && !(*cat.rho > base_rho)) {
    o.Fail("categorical rho " + Fmt("%.3f", *cat.rho) + " <= baseline " + Fmt("%.3f", base_rho));
  }
  if (o.pass) {
    o.detail = "rho categorical " + Fmt("%.3f", *cat.rho) + " > baseline " +
               (base.rho ? Fmt("%.3f", *base.rho) : std::string("undefined (constant)"));
  }
  return o;
}

// --- determinism -------------------------------------------------------------

Outcome Determinism() {
  Outcome o;
  auto root = fs::temp_directory_path() / "catdist_acceptance";
  auto a = testing::RunToyPipeline((root / "a").string(), 1);
  auto b = testing::RunToyPipeline((root / "b").string(), 3);
  if (a.size() != b.size()) o.Fail("runs wrote different file sets");
  for (const auto& [name, bytes] : a) {
    auto it = b.find(name);
    if (it == b.end() || it->second != bytes) o.Fail(name + " differs");
  }
  fs::remove_all(root);
  if (o.pass) o.detail = std::to_string(a.size()) + " files bit-identical";
  return o;
}

// --- count oracle --------------------------------------------------------------

Outcome Counts() {
  Outcome o;
  std::mt19937_64 rng(100);
  auto corpus = testing::ZipfCorpus(rng, 100, 50);
  const int window = 5;
  CooccurrenceModel m = CountCooccurrences(testing::ToSentences(corpus), window, 4);
  testing::CountOracle oracle = testing::OracleCounts(corpus, window);
  if (m.total_tokens != oracle.tokens) o.Fail("token total");
  if (m.total_sentences != oracle.sentences) o.Fail("sentence total");
  std::size_t pairs = 0;
  for (const auto& [t, row] : m.context_counts) pairs += row.size();
  if (pairs != oracle.pairs.size()) o.Fail("pair count");
  for (const auto& [w, c] : oracle.targets) {
    if (m.target_count(w) != c) o.Fail("target count of " + w);
  }
  for (const auto& [p, c] : oracle.pairs) {
    if (m.context_count(p.first, p.second) != c) {
      o.Fail("pair (" + p.first + "," + p.second + ")");
      break;
    }
  }
  for (const auto& [w, c] : oracle.context_totals) {
    if (m.context_total(w) != c) o.Fail("context total of " + w);
  }
  if (o.pass) {
    o.detail = std::to_string(oracle.tokens) + " tokens, " + std::to_string(oracle.pairs.size()) +
               " distinct pairs, exact";
  }
  return o;
}

struct Check {
  const char* name;
  double budget_seconds;  // 0 = no time limit
  Outcome (*run)();
};

}  // namespace
}  // namespace catdist

int main() {
  using namespace catdist;
  SetWarningSink({});
  const Check checks[] = {
      {"show-matrix", 1.0, ShowMatrix},
      {"inner-product-expansion", 10.0, Expansion},
      {"word-order", 0.0, WordOrder},
      {"pregroup-reduction", 30.0, Pregroup},
      {"spearman", 0.0, Spearman},
      {"synthetic-disambiguation", 60.0, Synthetic},
      {"determinism", 0.0, Determinism},
      {"count-oracle", 0.0, Counts},
  };
  int failures = 0;
  for (const Check& c : checks) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.budget_seconds > 0 && secs >= c.budget_seconds) {
      o.Fail("took " + Fmt("%.2f", secs) + " s, limit " + Fmt("%.0f", c.budget_seconds) + " s");
    }
    failures += !o.pass;
    std::printf("%s %-26s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
