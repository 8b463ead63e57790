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

// Pregroup types, reduction to a target type, and the composition recipe a
// reduction induces.
//
// Concrete syntax: a type is a juxtaposition of simple terms. A term is an
// atom (one ASCII letter followed by any digits, e.g. `n`, `s`, `n2`) with
// zero or more adjoint markers `^l` / `^r`; `n^l^l` is the double left
// adjoint. Whitespace between terms is optional and `1` is the unit.

#ifndef CATDIST_PREGROUP_H_
#define CATDIST_PREGROUP_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catdist {

struct SimpleTerm {
  std::string base;
  int adjoint = 0;  // -1 = ^l, +1 = ^r, 0 = plain; iterated adjoints stack

  friend bool operator==(const SimpleTerm&, const SimpleTerm&) = default;
};

// x^(z) x^(z+1) -> 1, e.g. n^l n and n n^r.
inline bool Contracts(const SimpleTerm& left, const SimpleTerm& right) {
  return left.base == right.base && right.adjoint == left.adjoint + 1;
}

std::string ToString(const SimpleTerm& term);

struct PregroupType {
  std::vector<SimpleTerm> terms;  // empty = unit

  friend bool operator==(const PregroupType&, const PregroupType&) = default;
};

std::string ToString(const PregroupType& type);

// Throws ParseError (line 0, 1-based column) on unknown characters or a
// dangling/unknown adjoint marker.
PregroupType ParseType(std::string_view text);

// Cups over the concatenated term sequence.
struct ReductionWitness {
  std::vector<std::pair<std::size_t, std::size_t>> cups;  // (i, j), i < j, sorted by i
  std::vector<std::size_t> survivors;                     // ascending

  friend bool operator==(const ReductionWitness&, const ReductionWitness&) = default;
};

std::vector<SimpleTerm> Concatenate(std::span<const PregroupType> types);

// Searches exhaustively (with memoisation) for a sequence of adjacent
// contractions that leaves exactly the plain atom `target`. Returns nullopt
// when none exists.
std::optional<ReductionWitness> Reduce(std::span<const PregroupType> types,
                                       std::string_view target);

// Checks the structural invariants of a witness against a term sequence:
// cups disjoint and non-crossing, each cup a contraction, survivors exactly
// the uncovered positions. Returns an explanation on failure.
std::optional<std::string> ValidateWitness(const ReductionWitness& witness,
                                           std::span<const SimpleTerm> terms);

// How to compose a phrase: the head word applies its tensor to the phrases
// feeding its adjoint slots. Arguments may themselves be relational (a
// modified noun, or a verb under an adverb), giving a tree.
struct CompositionRecipe {
  std::size_t head = 0;  // word position
  // One entry per adjoint term of the head, in term order.
  std::vector<CompositionRecipe> slots;

  std::size_t arity() const { return slots.size(); }
  // Word positions feeding each slot at the top level.
  std::vector<std::size_t> slot_words() const;

  friend bool operator==(const CompositionRecipe&, const CompositionRecipe&) = default;
};

// Converts a witness into a recipe. The word owning the surviving term is the
// head; each cup must join an adjoint term of one word to the single plain
// term of another word, which becomes that word's argument. Throws
// UnsupportedStructure naming the offending cup otherwise (cups inside one
// word, cups between two adjoint terms, a word feeding two heads, or a
// survivor that is not a plain term).
CompositionRecipe MakeRecipe(const ReductionWitness& witness,
                             std::span<const PregroupType> word_types);

}  // namespace catdist

#endif  // CATDIST_PREGROUP_H_
