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

#include "catdist/relational.h"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "catdist/error.h"
#include "catdist/log.h"
#include "test_support.h"

namespace catdist {
namespace {

using testing::SampleLexicon;
using testing::ShowRelations;

struct QuietWarnings {
  QuietWarnings() : previous(SetWarningSink([this](std::string_view m) {
    messages.emplace_back(m);
  })) {}
  ~QuietWarnings() { SetWarningSink(previous); }
  std::vector<std::string> messages;
  LogSink previous;
};

TEST_CASE("show matrix matches the dense oracle") {
  auto relations = ShowRelations();
  LearnedTensor learned = LearnTensor("show", relations, SampleLexicon(), 2);
  CHECK(learned.instances == 2);
  CHECK(learned.skipped == 0);
  auto oracle = testing::ShowMatrixOracle();
  auto dense = learned.tensor.ToDense();
  REQUIRE(dense.size() == 16);
  for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(dense[k] - oracle[k]) <= 1e-9);
  CHECK(std::abs(learned.tensor.at({0, 0}) - 79.24) <= 1e-9);
  CHECK(std::abs(learned.tensor.at({1, 2}) - 396.14) <= 1e-9);
}

TEST_CASE("single instance gives the plain kronecker product") {
  std::vector<RelationInstance> one = {{"show", {"table", "result"}}};
  auto lex = SampleLexicon();
  CHECK(LearnTensor("show", one, lex, 2).tensor ==
        Kron(*lex.find("table"), *lex.find("result")));
}

TEST_CASE("learning is order independent within 1e-9") {
  std::mt19937_64 rng(43);
  VectorLexicon lex;
  lex.dim = 5;
  std::vector<std::string> nouns;
  for (int i = 0; i < 8; ++i) {
    nouns.push_back("n" + std::to_string(i));
    lex.vectors.emplace(nouns.back(), testing::RandomTensor(rng, 1, 5, 0.7, 0.0, 10.0));
  }
  std::uniform_int_distribution<std::size_t> pick(0, nouns.size() - 1);
  std::vector<RelationInstance> rels;
  for (int i = 0; i < 30; ++i) rels.push_back({"v", {nouns[pick(rng)], nouns[pick(rng)]}});
  SemanticTensor a = LearnTensor("v", rels, lex, 2).tensor;
  std::shuffle(rels.begin(), rels.end(), rng);
  SemanticTensor b = LearnTensor("v", rels, lex, 2).tensor;
  auto da = a.ToDense(), db = b.ToDense();
  for (std::size_t k = 0; k < da.size(); ++k) CHECK(da[k] == doctest::Approx(db[k]).epsilon(1e-9));

  // LearnLexicon sorts each group first, so it is bit-identical under shuffles.
  RelationalLexicon l1 = LearnLexicon(rels, lex);
  std::shuffle(rels.begin(), rels.end(), rng);
  CHECK(LearnLexicon(rels, lex) == l1);
}

TEST_CASE("missing argument vectors are skipped") {
  std::vector<RelationInstance> rels = {{"show", {"table", "result"}},
                                        {"show", {"table", "unicorn"}}};
  LearnedTensor t = LearnTensor("show", rels, SampleLexicon(), 2);
  CHECK(t.instances == 1);
  CHECK(t.skipped == 1);

  QuietWarnings quiet;
  LearnStats stats;
  RelationalLexicon lex = LearnLexicon(rels, SampleLexicon(), Accumulation::kSum, &stats);
  CHECK(stats.instances == 2);
  CHECK(stats.skipped == 1);
  REQUIRE(lex.find("show", 2) != nullptr);
  CHECK(lex.find("show", 2)->k == 2);
  CHECK_FALSE(quiet.messages.empty());
}

TEST_CASE("learn tensor rejects a mismatched head or arity") {
  std::vector<RelationInstance> rels = {{"show", {"table", "result"}}};
  CHECK_THROWS_AS(LearnTensor("tell", rels, SampleLexicon(), 2), DataError);
  CHECK_THROWS_AS(LearnTensor("show", rels, SampleLexicon(), 1), DataError);
}

TEST_CASE("product accumulation") {
  auto relations = ShowRelations();
  auto lex = SampleLexicon();
  SemanticTensor p = LearnTensor("show", relations, lex, 2, Accumulation::kProduct).tensor;
  SemanticTensor expected = Pointwise(Kron(*lex.find("table"), *lex.find("result")),
                                      Kron(*lex.find("map"), *lex.find("location")));
  CHECK(p == expected);
  CHECK(ParseAccumulation("product") == Accumulation::kProduct);
  CHECK(AccumulationName(Accumulation::kSum) == "sum");
  CHECK_THROWS_AS(ParseAccumulation("max"), std::invalid_argument);
}

TEST_CASE("the same lemma at two arities gives two entries") {
  std::vector<RelationInstance> rels = {
      {"show", {"table", "result"}}, {"show", {"map"}}, {"show", {"table"}}};
  RelationalLexicon lex = LearnLexicon(rels, SampleLexicon());
  CHECK(lex.size() == 2);
  REQUIRE(lex.find("show", 1) != nullptr);
  CHECK(lex.find("show", 1)->tensor.order() == 1);
  CHECK(lex.find("show", 1)->k == 2);
  CHECK(lex.find("show", 2)->tensor.order() == 2);
  CHECK(lex.find("show", 3) == nullptr);
}

TEST_CASE("relational lexicon insert checks shape") {
  RelationalLexicon lex(4);
  CHECK_THROWS_AS(lex.Insert("v", 2, {SemanticTensor(1, 4), 1}), DataError);
  CHECK_THROWS_AS(lex.Insert("v", 2, {SemanticTensor(2, 3), 1}), DataError);
  CHECK_NOTHROW(lex.Insert("v", 2, {SemanticTensor(2, 4), 1}));
}

TEST_CASE("relations file reading") {
  QuietWarnings quiet;
  std::istringstream in(
      "show\t2\ttable\tresult\n"
      "show\t2\tmap\n"
      "sleep\t1\tcat\n"
      "\n"
      "bad\tx\ty\n");
  std::size_t rejected = 0;
  auto rels = ReadRelations(in, &rejected);
  CHECK(rejected == 2);
  REQUIRE(rels.size() == 2);
  CHECK(rels[1] == RelationInstance{"sleep", {"cat"}});
  CHECK(quiet.messages.size() == 2);

  std::ostringstream out;
  WriteRelations(out, rels);
  std::istringstream back(out.str());
  CHECK(ReadRelations(back) == rels);
}

TEST_CASE("relational lexicon round-trips") {
  std::vector<RelationInstance> rels = ShowRelations();
  rels.push_back({"red", {"map"}});
  RelationalLexicon lex = LearnLexicon(rels, SampleLexicon());
  std::ostringstream out;
  WriteRelationalLexicon(out, lex);
  std::istringstream in(out.str());
  CHECK(ReadRelationalLexicon(in) == lex);
}

TEST_CASE("heuristic extraction") {
  std::istringstream in(
      "the_AT0 old_AJ0 table_NN1 show_VVZ clearly_AV0 the_AT0 result_NN1\n"
      "dog_NN1 sleep_VVZ\n"
      "run_VVZ fast_AV0\n");
  auto rels = ExtractRelations(ReadCorpus(in));
  std::sort(rels.begin(), rels.end());
  std::vector<RelationInstance> expected = {
      {"clearly", {"table", "result"}},
      {"old", {"table"}},
      {"show", {"table", "result"}},
      {"sleep", {"dog"}},
  };
  CHECK(rels == expected);
}

}  // namespace
}  // namespace catdist
