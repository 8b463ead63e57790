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

#include "catdist/compose.h"

#include <algorithm>
#include <stdexcept>

#include "catdist/error.h"

namespace catdist {
namespace {

const SemanticTensor& WordVector(const VectorLexicon& vectors, std::string_view lemma) {
  const SemanticTensor* v = vectors.find(lemma);
  if (!v) throw CompositionError("no vector for '" + std::string(lemma) + "'");
  return *v;
}

const SemanticTensor& RelationTensor(const RelationalLexicon& relations, std::string_view lemma,
                                     int arity) {
  const RelationalLexicon::Entry* e = relations.find(lemma, arity);
  if (!e) {
    throw CompositionError("no tensor for '" + std::string(lemma) + "' at arity " +
                           std::to_string(arity));
  }
  return e->tensor;
}

bool HasObject(Pattern p) {
  return p == Pattern::kTransitive || p == Pattern::kModifiedTransitive;
}

bool IsModified(Pattern p) {
  return p == Pattern::kModifiedIntransitive || p == Pattern::kModifiedTransitive;
}

std::optional<std::string> OptionalSlot(const std::string& word) {
  if (word.empty() || word == "-") return std::nullopt;
  return word;
}

}  // namespace

std::string_view PatternName(Pattern p) {
  switch (p) {
    case Pattern::kIntransitive:
      return "intransitive";
    case Pattern::kTransitive:
      return "transitive";
    case Pattern::kModifiedIntransitive:
      return "modified-intransitive";
    case Pattern::kModifiedTransitive:
      return "modified-transitive";
    case Pattern::kAdjectiveNoun:
      return "adjective-noun";
  }
  return "?";
}

Pattern ParsePattern(std::string_view name) {
  for (Pattern p : {Pattern::kIntransitive, Pattern::kTransitive, Pattern::kModifiedIntransitive,
                    Pattern::kModifiedTransitive, Pattern::kAdjectiveNoun}) {
    if (PatternName(p) == name) return p;
  }
  throw std::invalid_argument("unknown pattern '" + std::string(name) + "'");
}

PhraseSpec PhraseSpec::Intransitive(std::string subject, std::string verb) {
  PhraseSpec s;
  s.pattern = Pattern::kIntransitive;
  s.subject = std::move(subject);
  s.verb = std::move(verb);
  s.Validate();
  return s;
}

PhraseSpec PhraseSpec::Transitive(std::string subject, std::string verb, std::string object) {
  PhraseSpec s;
  s.pattern = Pattern::kTransitive;
  s.subject = std::move(subject);
  s.verb = std::move(verb);
  s.object = std::move(object);
  s.Validate();
  return s;
}

PhraseSpec PhraseSpec::ModifiedIntransitive(std::optional<std::string> adjective,
                                            std::string subject, std::string verb,
                                            std::optional<std::string> adverb) {
  PhraseSpec s;
  s.pattern = Pattern::kModifiedIntransitive;
  s.adjective = std::move(adjective);
  s.subject = std::move(subject);
  s.verb = std::move(verb);
  s.adverb = std::move(adverb);
  s.Validate();
  return s;
}

PhraseSpec PhraseSpec::ModifiedTransitive(std::optional<std::string> adjective,
                                          std::string subject, std::string verb,
                                          std::string object, std::optional<std::string> adverb) {
  PhraseSpec s;
  s.pattern = Pattern::kModifiedTransitive;
  s.adjective = std::move(adjective);
  s.subject = std::move(subject);
  s.verb = std::move(verb);
  s.object = std::move(object);
  s.adverb = std::move(adverb);
  s.Validate();
  return s;
}

PhraseSpec PhraseSpec::AdjectiveNoun(std::string adjective, std::string noun) {
  PhraseSpec s;
  s.pattern = Pattern::kAdjectiveNoun;
  s.adjective = std::move(adjective);
  s.subject = std::move(noun);
  s.Validate();
  return s;
}

PhraseSpec PhraseSpec::FromWords(Pattern pattern, std::span<const std::string> words) {
  auto need = [&](std::size_t n) {
    if (words.size() != n) {
      throw std::invalid_argument(std::string(PatternName(pattern)) + " takes " +
                                  std::to_string(n) + " words, got " +
                                  std::to_string(words.size()));
    }
  };
  switch (pattern) {
    case Pattern::kIntransitive:
      need(2);
      return Intransitive(words[0], words[1]);
    case Pattern::kTransitive:
      need(3);
      return Transitive(words[0], words[1], words[2]);
    case Pattern::kModifiedIntransitive:
      need(4);
      return ModifiedIntransitive(OptionalSlot(words[0]), words[1], words[2],
                                  OptionalSlot(words[3]));
    case Pattern::kModifiedTransitive:
      need(5);
      return ModifiedTransitive(OptionalSlot(words[0]), words[1], words[2], words[3],
                                OptionalSlot(words[4]));
    case Pattern::kAdjectiveNoun:
      need(2);
      return AdjectiveNoun(words[0], words[1]);
  }
  throw std::invalid_argument("unknown pattern");
}

void PhraseSpec::Validate() const {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(std::string(PatternName(pattern)) + " phrase: " + why);
  };
  if (subject.empty()) fail("missing noun");
  const bool adjective_noun = pattern == Pattern::kAdjectiveNoun;
  if (adjective_noun) {
    if (!adjective || adjective->empty()) fail("missing adjective");
    if (!verb.empty() || object || adverb) fail("adjective-noun phrases have no verb slots");
    return;
  }
  if (verb.empty()) fail("missing verb");
  if (HasObject(pattern) != object.has_value()) {
    fail(HasObject(pattern) ? "missing object" : "unexpected object");
  }
  if (object && object->empty()) fail("empty object");
  if (!IsModified(pattern) && (adjective || adverb)) fail("unexpected modifier");
  if ((adjective && adjective->empty()) || (adverb && adverb->empty())) fail("empty modifier");
}

int PhraseSpec::result_order() const { return HasObject(pattern) ? 2 : 1; }

std::vector<TypedWord> TypedWords(const PhraseSpec& spec) {
  spec.Validate();
  static const PregroupType kNoun = ParseType("n");
  static const PregroupType kIntransitiveVerb = ParseType("n^r s");
  static const PregroupType kTransitiveVerb = ParseType("n^r s n^l");
  static const PregroupType kAdjective = ParseType("n n^l");
  static const PregroupType kAdverb = ParseType("s^r s");

  std::vector<TypedWord> words;
  if (spec.adjective) words.push_back({*spec.adjective, kAdjective});
  words.push_back({spec.subject, kNoun});
  if (spec.pattern == Pattern::kAdjectiveNoun) return words;
  words.push_back({spec.verb, HasObject(spec.pattern) ? kTransitiveVerb : kIntransitiveVerb});
  if (spec.object) words.push_back({*spec.object, kNoun});
  if (spec.adverb) words.push_back({*spec.adverb, kAdverb});
  return words;
}

std::string_view TargetType(const PhraseSpec& spec) {
  return spec.pattern == Pattern::kAdjectiveNoun ? "n" : "s";
}

std::string_view ModelName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kCategorical:
      return "categorical";
    case ModelKind::kAdditive:
      return "add";
    case ModelKind::kMultiplicative:
      return "multiply";
    case ModelKind::kBaseline:
      return "baseline";
  }
  return "?";
}

ModelKind ParseModel(std::string_view name) {
  if (name == "categorical") return ModelKind::kCategorical;
  if (name == "add" || name == "additive") return ModelKind::kAdditive;
  if (name == "multiply" || name == "multiplicative") return ModelKind::kMultiplicative;
  if (name == "baseline") return ModelKind::kBaseline;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

SemanticTensor ComposeCategorical(const PhraseSpec& spec, const VectorLexicon& vectors,
                                  const RelationalLexicon& relations) {
  spec.Validate();
  if (spec.pattern == Pattern::kAdjectiveNoun) {
    return Pointwise(RelationTensor(relations, *spec.adjective, 1),
                     WordVector(vectors, spec.subject));
  }
  const int order = spec.result_order();
  SemanticTensor subject = WordVector(vectors, spec.subject);
  if (spec.adjective) subject = Pointwise(RelationTensor(relations, *spec.adjective, 1), subject);
  SemanticTensor verb = RelationTensor(relations, spec.verb, order);
  if (spec.adverb) verb = Pointwise(RelationTensor(relations, *spec.adverb, order), verb);
  if (order == 1) return Pointwise(verb, subject);
  return Pointwise(verb, Kron(subject, WordVector(vectors, *spec.object)));
}

SemanticTensor ComposeRecipe(const CompositionRecipe& recipe,
                             std::span<const std::string> lemmas, const VectorLexicon& vectors,
                             const RelationalLexicon& relations) {
  if (recipe.head >= lemmas.size()) throw CompositionError("recipe refers to a missing word");
  const std::string& lemma = lemmas[recipe.head];
  if (recipe.slots.empty()) return WordVector(vectors, lemma);
  std::vector<SemanticTensor> arguments;
  arguments.reserve(recipe.slots.size());
  for (const CompositionRecipe& slot : recipe.slots) {
    arguments.push_back(ComposeRecipe(slot, lemmas, vectors, relations));
  }
  SemanticTensor product = Kron(arguments);
  return Pointwise(RelationTensor(relations, lemma, product.order()), product);
}

SemanticTensor ComposeByGrammar(const PhraseSpec& spec, const VectorLexicon& vectors,
                                const RelationalLexicon& relations) {
  std::vector<TypedWord> words = TypedWords(spec);
  std::vector<PregroupType> types;
  std::vector<std::string> lemmas;
  for (TypedWord& w : words) {
    types.push_back(w.type);
    lemmas.push_back(w.lemma);
  }
  auto witness = Reduce(types, TargetType(spec));
  if (!witness) throw CompositionError("phrase types do not reduce to the target type");
  return ComposeRecipe(MakeRecipe(*witness, types), lemmas, vectors, relations);
}

SemanticTensor ComposeCompetitor(ModelKind kind, const PhraseSpec& spec,
                                 const VectorLexicon& vectors) {
  spec.Validate();
  if (kind == ModelKind::kCategorical) {
    throw std::invalid_argument("categorical composition needs a relational lexicon");
  }
  if (kind == ModelKind::kBaseline) {
    return WordVector(vectors, spec.pattern == Pattern::kAdjectiveNoun ? *spec.adjective
                                                                        : spec.verb);
  }
  // Folding in lemma order makes the result bit-identical for any word order.
  std::vector<std::string> lemmas;
  for (const TypedWord& w : TypedWords(spec)) lemmas.push_back(w.lemma);
  std::sort(lemmas.begin(), lemmas.end());
  SemanticTensor result = WordVector(vectors, lemmas.front());
  for (std::size_t i = 1; i < lemmas.size(); ++i) {
    const SemanticTensor& v = WordVector(vectors, lemmas[i]);
    result = kind == ModelKind::kAdditive ? Add(result, v) : Pointwise(result, v);
  }
  return result;
}

SemanticTensor Compose(ModelKind kind, const PhraseSpec& spec, const Lexicons& lexicons) {
  if (kind == ModelKind::kCategorical) {
    return ComposeCategorical(spec, lexicons.vectors, lexicons.relations);
  }
  return ComposeCompetitor(kind, spec, lexicons.vectors);
}

double Similarity(const PhraseSpec& a, const PhraseSpec& b, ModelKind kind,
                  const Lexicons& lexicons) {
  if (a.pattern != b.pattern) {
    throw std::invalid_argument("cannot compare a " + std::string(PatternName(a.pattern)) +
                                " phrase with a " + std::string(PatternName(b.pattern)) + " one");
  }
  return Cosine(Compose(kind, a, lexicons), Compose(kind, b, lexicons));
}

}  // namespace catdist
