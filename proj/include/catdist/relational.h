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

// Tensors for relational words (verbs, adjectives, adverbs).
//
// A word P taking m arguments is represented by the order-m tensor
//
//   P = Σ_k (w_1 ⊗ w_2 ⊗ ... ⊗ w_m)_k
//
// summed over the k observed occurrences of P with arguments w_1..w_m, where
// w_l is the distributional vector of the l-th argument.

#ifndef CATDIST_RELATIONAL_H_
#define CATDIST_RELATIONAL_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catdist/corpus.h"
#include "catdist/linalg.h"

namespace catdist {

// One occurrence of a relational word with its arguments, in the order of
// the word's adjoint types (subject before object).
struct RelationInstance {
  std::string head;
  std::vector<std::string> arguments;

  int arity() const { return static_cast<int>(arguments.size()); }

  friend bool operator==(const RelationInstance&, const RelationInstance&) = default;
  friend auto operator<=>(const RelationInstance&, const RelationInstance&) = default;
};

// How per-instance Kronecker products are combined. kProduct takes the
// point-wise product instead of the sum and mostly yields empty tensors on
// sparse data; it is kept only to reproduce that observation.
enum class Accumulation { kSum, kProduct };

std::string_view AccumulationName(Accumulation a);
Accumulation ParseAccumulation(std::string_view name);

struct LearnedTensor {
  SemanticTensor tensor;
  std::size_t instances = 0;  // instances whose product entered the tensor
  std::size_t skipped = 0;    // instances with an argument missing from the lexicon
};

// Throws DataError naming the instance when its head differs from `head` or
// its argument count differs from `arity`. Instances are accumulated in the
// order given.
LearnedTensor LearnTensor(std::string_view head, std::span<const RelationInstance> instances,
                          const VectorLexicon& vectors, int arity,
                          Accumulation accumulation = Accumulation::kSum);

class RelationalLexicon {
 public:
  struct Entry {
    SemanticTensor tensor;
    std::size_t k = 0;  // instances in the group, including skipped ones

    friend bool operator==(const Entry&, const Entry&) = default;
  };
  using Key = std::pair<std::string, int>;  // (lemma, arity)

  RelationalLexicon() = default;
  explicit RelationalLexicon(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<Key, Entry>& entries() const { return entries_; }

  const Entry* find(std::string_view lemma, int arity) const;
  // Throws DataError if the tensor order differs from `arity` or its
  // dimension from the lexicon's.
  void Insert(std::string lemma, int arity, Entry entry);

  friend bool operator==(const RelationalLexicon&, const RelationalLexicon&) = default;

 private:
  std::size_t dim_ = 0;
  std::map<Key, Entry> entries_;
};

struct LearnStats {
  std::size_t instances = 0;
  std::size_t skipped = 0;  // missing argument vectors
};

// Groups instances by (head, arity) and learns one tensor per group. Each
// group is summed in sorted argument order, so the result does not depend on
// the order of the input stream.
RelationalLexicon LearnLexicon(std::span<const RelationInstance> relations,
                               const VectorLexicon& vectors,
                               Accumulation accumulation = Accumulation::kSum,
                               LearnStats* stats = nullptr);

// Relations file: `head<TAB>arity<TAB>arg1<TAB>...`. Rows whose argument count
// disagrees with the arity column (or that are otherwise malformed) are
// skipped with a warning and counted in `rejected`.
std::vector<RelationInstance> ReadRelations(std::istream& in, std::size_t* rejected = nullptr);
void WriteRelations(std::ostream& out, std::span<const RelationInstance> relations);

// `WORD<TAB>lemma<TAB>arity<TAB>k` followed by the tensor block, per entry.
void WriteRelationalLexicon(std::ostream& out, const RelationalLexicon& lexicon);
RelationalLexicon ReadRelationalLexicon(std::istream& in);

// Heuristic extraction from a POS-tagged corpus. Not a parser.
//   verb (tag V*): nearest noun (N*) to the left is the subject, nearest to
//     the right the object; both give an arity-2 instance, subject alone an
//     arity-1 instance.
//   adjective (J*, AJ*, ADJ): the nearest noun to its right, arity 1.
//   adverb (R*, AV*, ADV): attaches to the nearest verb on its left and
//     takes that verb's arguments, at the verb's arity.
// Search for nouns stops at another verb.
std::vector<RelationInstance> ExtractRelations(std::span<const Sentence> corpus);

}  // namespace catdist

#endif  // CATDIST_RELATIONAL_H_
