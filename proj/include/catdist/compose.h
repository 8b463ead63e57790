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

// Phrase and sentence vectors.
//
// The categorical model applies relational tensors to their arguments:
//
//   sub verb          = verb ⊙ sub                      (S = N)
//   sub verb obj      = verb ⊙ (sub ⊗ obj)              (S = N ⊗ N)
//   adj noun          = adj ⊙ noun
//   adj sub verb obj adv = (adv ⊙ verb) ⊙ ((adj ⊙ sub) ⊗ obj)
//
// The competitor models ignore grammar: additive sums the lexical vectors of
// the words, multiplicative takes their point-wise product, and the baseline
// keeps the verb's lexical vector alone.

#ifndef CATDIST_COMPOSE_H_
#define CATDIST_COMPOSE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catdist/corpus.h"
#include "catdist/linalg.h"
#include "catdist/pregroup.h"
#include "catdist/relational.h"

namespace catdist {

enum class Pattern {
  kIntransitive,          // subject verb
  kTransitive,            // subject verb object
  kModifiedIntransitive,  // [adjective] subject verb [adverb]
  kModifiedTransitive,    // [adjective] subject verb object [adverb]
  kAdjectiveNoun,         // adjective noun (noun held in `subject`)
};

std::string_view PatternName(Pattern p);
// Accepts the names returned by PatternName; throws std::invalid_argument.
Pattern ParsePattern(std::string_view name);

struct PhraseSpec {
  Pattern pattern = Pattern::kIntransitive;
  std::optional<std::string> adjective;
  std::string subject;
  std::string verb;
  std::optional<std::string> object;
  std::optional<std::string> adverb;

  static PhraseSpec Intransitive(std::string subject, std::string verb);
  static PhraseSpec Transitive(std::string subject, std::string verb, std::string object);
  static PhraseSpec ModifiedIntransitive(std::optional<std::string> adjective,
                                         std::string subject, std::string verb,
                                         std::optional<std::string> adverb);
  static PhraseSpec ModifiedTransitive(std::optional<std::string> adjective,
                                       std::string subject, std::string verb, std::string object,
                                       std::optional<std::string> adverb);
  static PhraseSpec AdjectiveNoun(std::string adjective, std::string noun);

  // Builds a spec from surface-order lemmas (e.g. {"table", "show",
  // "result"}). Modified patterns take their optional slots as "-" or "".
  static PhraseSpec FromWords(Pattern pattern, std::span<const std::string> words);

  // Throws std::invalid_argument when a required slot is empty or a slot the
  // pattern does not have is set.
  void Validate() const;

  // Order of the composed categorical tensor.
  int result_order() const;

  friend bool operator==(const PhraseSpec&, const PhraseSpec&) = default;
};

// The words of a phrase in surface order with their pregroup types.
struct TypedWord {
  std::string lemma;
  PregroupType type;
};
std::vector<TypedWord> TypedWords(const PhraseSpec& spec);
// "s" for sentence patterns, "n" for adjective-noun.
std::string_view TargetType(const PhraseSpec& spec);

enum class ModelKind { kCategorical, kAdditive, kMultiplicative, kBaseline };

std::string_view ModelName(ModelKind kind);
// Accepts categorical, add/additive, multiply/multiplicative, baseline.
ModelKind ParseModel(std::string_view name);

struct Lexicons {
  const VectorLexicon& vectors;
  const RelationalLexicon& relations;
};

// Throws CompositionError naming the lemma (and arity) of a missing entry.
SemanticTensor ComposeCategorical(const PhraseSpec& spec, const VectorLexicon& vectors,
                                  const RelationalLexicon& relations);

// Executes a recipe bottom-up: a word without slots contributes its vector;
// a word with slots contributes tensor ⊙ (slot_1 ⊗ ... ⊗ slot_m), where its
// tensor is looked up at the order of that Kronecker product.
SemanticTensor ComposeRecipe(const CompositionRecipe& recipe,
                             std::span<const std::string> lemmas, const VectorLexicon& vectors,
                             const RelationalLexicon& relations);

// Types the phrase, reduces it, and executes the resulting recipe.
SemanticTensor ComposeByGrammar(const PhraseSpec& spec, const VectorLexicon& vectors,
                                const RelationalLexicon& relations);

// kind must not be kCategorical. Result is always order 1.
SemanticTensor ComposeCompetitor(ModelKind kind, const PhraseSpec& spec,
                                 const VectorLexicon& vectors);

SemanticTensor Compose(ModelKind kind, const PhraseSpec& spec, const Lexicons& lexicons);

// Cosine of the two compositions. Both specs must share a pattern.
double Similarity(const PhraseSpec& a, const PhraseSpec& b, ModelKind kind,
                  const Lexicons& lexicons);

}  // namespace catdist

#endif  // CATDIST_COMPOSE_H_
