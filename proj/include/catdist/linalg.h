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

// Sparse tensors over a fixed basis of context words.
//
// A SemanticTensor of order m and dimension r stores the non-zero weights of
// an element of N ⊗ ... ⊗ N (m factors, dim N = r). Order 1 tensors are word
// vectors, order 2 tensors are transitive-verb matrices and transitive
// sentence vectors. Entries are keyed by their row-major linear offset, so
// iteration order is lexicographic in the index tuple.
//
// Tensors are immutable after construction and every operation below is a
// pure function, so they can be shared freely between threads.

#ifndef CATDIST_LINALG_H_
#define CATDIST_LINALG_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace catdist {

using MultiIndex = std::vector<std::uint32_t>;

// The ordered basis {n_i} of the semantic space.
class VocabIndex {
 public:
  VocabIndex() = default;
  // Throws DataError on an empty or duplicated lemma.
  explicit VocabIndex(std::vector<std::string> basis_words);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& word(std::size_t i) const { return words_.at(i); }
  const std::vector<std::string>& words() const { return words_; }
  std::optional<std::size_t> find(std::string_view lemma) const;

  friend bool operator==(const VocabIndex& a, const VocabIndex& b) {
    return a.words_ == b.words_;
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

class SemanticTensor {
 public:
  // Row-major linear offset -> weight. Never holds an explicit zero.
  using Entries = std::map<std::uint64_t, double>;

  // The zero tensor. Throws ShapeError if order or dim is 0, or if dim^order
  // does not fit a 64-bit offset.
  SemanticTensor(int order, std::size_t dim);

  // Builds an order-1 tensor from (index, weight) pairs. Repeated indices are
  // summed; zeros are dropped.
  static SemanticTensor Vector(std::size_t dim,
                               std::span<const std::pair<std::uint32_t, double>> weights);
  static SemanticTensor Vector(std::size_t dim,
                               std::initializer_list<std::pair<std::uint32_t, double>> weights);
  static SemanticTensor FromDense(int order, std::size_t dim, std::span<const double> values);
  static SemanticTensor FromEntries(int order, std::size_t dim,
                                    const std::map<MultiIndex, double>& entries);
  // Takes linear-offset entries; zeros are dropped, offsets are range-checked.
  static SemanticTensor FromLinear(int order, std::size_t dim, Entries entries);

  int order() const { return order_; }
  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  const Entries& entries() const { return entries_; }

  // Total number of cells, dim^order.
  std::uint64_t extent() const { return extent_; }

  double at(const MultiIndex& index) const;
  double at(std::initializer_list<std::uint32_t> index) const {
    return at(MultiIndex(index));
  }

  std::uint64_t Flatten(const MultiIndex& index) const;
  MultiIndex Unflatten(std::uint64_t offset) const;

  std::vector<double> ToDense() const;

  friend bool operator==(const SemanticTensor& a, const SemanticTensor& b) {
    return a.order_ == b.order_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  SemanticTensor(int order, std::size_t dim, std::uint64_t extent, Entries entries)
      : order_(order), dim_(dim), extent_(extent), entries_(std::move(entries)) {}

  int order_;
  std::size_t dim_;
  std::uint64_t extent_;
  Entries entries_;
};

// (a ⊗ b)(i..., j...) = a(i...) * b(j...). Result order is a.order + b.order.
SemanticTensor Kron(const SemanticTensor& a, const SemanticTensor& b);
// Left fold of Kron over a non-empty list.
SemanticTensor Kron(std::span<const SemanticTensor> factors);

// Entry-wise product; support is the intersection of supports.
SemanticTensor Pointwise(const SemanticTensor& a, const SemanticTensor& b);

// Entry-wise sum; entries cancelling to exactly zero are dropped.
SemanticTensor Add(const SemanticTensor& a, const SemanticTensor& b);

SemanticTensor Scale(const SemanticTensor& a, double factor);

double Inner(const SemanticTensor& a, const SemanticTensor& b);
double Norm(const SemanticTensor& a);

// <a|b> / (|a| |b|), clamped to [-1, 1]. Returns 0 when either side is zero.
double Cosine(const SemanticTensor& a, const SemanticTensor& b);

// Text form: a header `order=<m> dim=<r>` followed by one line per entry,
// `i1<TAB>...<TAB>im<TAB>weight`, sorted by index tuple, weights with 17
// significant digits.
void WriteTensor(std::ostream& out, const SemanticTensor& t);
std::string SerializeTensor(const SemanticTensor& t);

// Reads a header line and then entry lines for as long as the next line
// starts with a digit. `line_number` (1-based, of the last line consumed) is
// advanced for error reporting.
SemanticTensor ReadTensor(std::istream& in, std::size_t* line_number = nullptr);
SemanticTensor ParseTensor(std::string_view text);

// %.17g rendering shared by every file format; round-trips exactly.
std::string FormatWeight(double w);
double ParseWeight(std::string_view text, std::size_t line, std::size_t column = 0);

}  // namespace catdist

#endif  // CATDIST_LINALG_H_
