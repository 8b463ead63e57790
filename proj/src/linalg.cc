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

#include "catdist/linalg.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "catdist/error.h"
#include "text_util.h"

namespace catdist {
namespace {

std::uint64_t CheckedExtent(int order, std::size_t dim) {
  if (order < 1) throw ShapeError("tensor order must be positive, got " + std::to_string(order));
  if (dim < 1) throw ShapeError("tensor dimension must be positive");
  std::uint64_t extent = 1;
  for (int k = 0; k < order; ++k) {
    if (extent > std::numeric_limits<std::uint64_t>::max() / dim) {
      throw ShapeError("tensor of order " + std::to_string(order) + " and dimension " +
                       std::to_string(dim) + " exceeds the 64-bit index space");
    }
    extent *= dim;
  }
  return extent;
}

std::string ShapeString(const SemanticTensor& t) {
  return "(order " + std::to_string(t.order()) + ", dim " + std::to_string(t.dim()) + ")";
}

void RequireSameShape(const SemanticTensor& a, const SemanticTensor& b, const char* op) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + ShapeString(a) + " vs " +
                     ShapeString(b));
  }
}

std::string Position(std::size_t line, std::size_t column) {
  std::string p;
  if (line > 0) p = "line " + std::to_string(line);
  if (column > 0) p += (p.empty() ? "column " : ", column ") + std::to_string(column);
  return p.empty() ? p : p + ": ";
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(Position(line, column) + what), line_(line), column_(column) {}

VocabIndex::VocabIndex(std::vector<std::string> basis_words) : words_(std::move(basis_words)) {
  lookup_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) throw DataError("empty basis lemma at index " + std::to_string(i));
    if (!lookup_.emplace(words_[i], i).second) {
      throw DataError("duplicate basis lemma '" + words_[i] + "'");
    }
  }
}

std::optional<std::size_t> VocabIndex::find(std::string_view lemma) const {
  auto it = lookup_.find(std::string(lemma));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

SemanticTensor::SemanticTensor(int order, std::size_t dim)
    : order_(order), dim_(dim), extent_(CheckedExtent(order, dim)) {}

SemanticTensor SemanticTensor::Vector(
    std::size_t dim, std::span<const std::pair<std::uint32_t, double>> weights) {
  Entries entries;
  for (const auto& [i, w] : weights) {
    if (i >= dim) {
      throw ShapeError("index " + std::to_string(i) + " out of range for dim " +
                       std::to_string(dim));
    }
    entries[i] += w;
  }
  return FromLinear(1, dim, std::move(entries));
}

SemanticTensor SemanticTensor::Vector(
    std::size_t dim, std::initializer_list<std::pair<std::uint32_t, double>> weights) {
  return Vector(dim, std::span<const std::pair<std::uint32_t, double>>(weights.begin(),
                                                                       weights.size()));
}

SemanticTensor SemanticTensor::FromDense(int order, std::size_t dim,
                                         std::span<const double> values) {
  std::uint64_t extent = CheckedExtent(order, dim);
  if (values.size() != extent) {
    throw ShapeError("dense buffer has " + std::to_string(values.size()) + " values, expected " +
                     std::to_string(extent));
  }
  Entries entries;
  for (std::uint64_t k = 0; k < extent; ++k) {
    if (values[k] != 0.0) entries.emplace_hint(entries.end(), k, values[k]);
  }
  return SemanticTensor(order, dim, extent, std::move(entries));
}

SemanticTensor SemanticTensor::FromEntries(int order, std::size_t dim,
                                           const std::map<MultiIndex, double>& entries) {
  SemanticTensor shape(order, dim);
  Entries linear;
  for (const auto& [index, w] : entries) {
    if (w != 0.0) linear.emplace(shape.Flatten(index), w);
  }
  return SemanticTensor(order, dim, shape.extent_, std::move(linear));
}

SemanticTensor SemanticTensor::FromLinear(int order, std::size_t dim, Entries entries) {
  std::uint64_t extent = CheckedExtent(order, dim);
  if (!entries.empty() && entries.rbegin()->first >= extent) {
    throw ShapeError("linear offset out of range");
  }
  std::erase_if(entries, [](const auto& kv) { return kv.second == 0.0; });
  return SemanticTensor(order, dim, extent, std::move(entries));
}

double SemanticTensor::at(const MultiIndex& index) const {
  auto it = entries_.find(Flatten(index));
  return it == entries_.end() ? 0.0 : it->second;
}

std::uint64_t SemanticTensor::Flatten(const MultiIndex& index) const {
  if (index.size() != static_cast<std::size_t>(order_)) {
    throw ShapeError("index of length " + std::to_string(index.size()) + " for order " +
                     std::to_string(order_) + " tensor");
  }
  std::uint64_t offset = 0;
  for (std::uint32_t i : index) {
    if (i >= dim_) {
      throw ShapeError("index " + std::to_string(i) + " out of range for dim " +
                       std::to_string(dim_));
    }
    offset = offset * dim_ + i;
  }
  return offset;
}

MultiIndex SemanticTensor::Unflatten(std::uint64_t offset) const {
  MultiIndex index(order_);
  for (int k = order_ - 1; k >= 0; --k) {
    index[k] = static_cast<std::uint32_t>(offset % dim_);
    offset /= dim_;
  }
  return index;
}

std::vector<double> SemanticTensor::ToDense() const {
  std::vector<double> dense(extent_, 0.0);
  for (const auto& [k, w] : entries_) dense[k] = w;
  return dense;
}

SemanticTensor Kron(const SemanticTensor& a, const SemanticTensor& b) {
  if (a.dim() != b.dim()) {
    throw ShapeError("kron: dimension mismatch " + ShapeString(a) + " vs " + ShapeString(b));
  }
  SemanticTensor::Entries out;
  const std::uint64_t stride = b.extent();
  // Offsets come out in increasing order, so every insertion is at the end.
  for (const auto& [ka, wa] : a.entries()) {
    for (const auto& [kb, wb] : b.entries()) {
      double w = wa * wb;
      if (w != 0.0) out.emplace_hint(out.end(), ka * stride + kb, w);
    }
  }
  return SemanticTensor::FromLinear(a.order() + b.order(), a.dim(), std::move(out));
}

SemanticTensor Kron(std::span<const SemanticTensor> factors) {
  if (factors.empty()) throw ShapeError("kron: empty factor list");
  SemanticTensor result = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) result = Kron(result, factors[k]);
  return result;
}

SemanticTensor Pointwise(const SemanticTensor& a, const SemanticTensor& b) {
  RequireSameShape(a, b, "pointwise");
  SemanticTensor::Entries out;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      double w = ia->second * ib->second;
      if (w != 0.0) out.emplace_hint(out.end(), ia->first, w);
      ++ia;
      ++ib;
    }
  }
  return SemanticTensor::FromLinear(a.order(), a.dim(), std::move(out));
}

SemanticTensor Add(const SemanticTensor& a, const SemanticTensor& b) {
  RequireSameShape(a, b, "add");
  SemanticTensor::Entries out = a.entries();
  for (const auto& [k, w] : b.entries()) {
    auto [it, inserted] = out.emplace(k, w);
    if (!inserted) {
      it->second += w;
      if (it->second == 0.0) out.erase(it);
    }
  }
  return SemanticTensor::FromLinear(a.order(), a.dim(), std::move(out));
}

SemanticTensor Scale(const SemanticTensor& a, double factor) {
  SemanticTensor::Entries out;
  for (const auto& [k, w] : a.entries()) {
    double v = w * factor;
    if (v != 0.0) out.emplace_hint(out.end(), k, v);
  }
  return SemanticTensor::FromLinear(a.order(), a.dim(), std::move(out));
}

double Inner(const SemanticTensor& a, const SemanticTensor& b) {
  RequireSameShape(a, b, "inner");
  const auto& small = a.nnz() <= b.nnz() ? a.entries() : b.entries();
  const auto& large = a.nnz() <= b.nnz() ? b.entries() : a.entries();
  double sum = 0.0;
  for (const auto& [k, w] : small) {
    auto it = large.find(k);
    if (it != large.end()) sum += w * it->second;
  }
  return sum;
}

double Norm(const SemanticTensor& a) {
  double sum = 0.0;
  for (const auto& [k, w] : a.entries()) sum += w * w;
  return std::sqrt(sum);
}

double Cosine(const SemanticTensor& a, const SemanticTensor& b) {
  RequireSameShape(a, b, "cosine");
  double na = Norm(a);
  double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  if (a == b) return 1.0;  // sqrt(x)^2 need not round back to x
  return std::clamp(Inner(a, b) / (na * nb), -1.0, 1.0);
}

std::string FormatWeight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

double ParseWeight(std::string_view text, std::size_t line, std::size_t column) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty weight", line, column);
  char* end = nullptr;
  double w = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(w)) {
    throw ParseError("invalid weight '" + s + "'", line, column);
  }
  return w;
}

void WriteTensor(std::ostream& out, const SemanticTensor& t) {
  out << "order=" << t.order() << " dim=" << t.dim() << '\n';
  for (const auto& [k, w] : t.entries()) {
    for (std::uint32_t i : t.Unflatten(k)) out << i << '\t';
    out << FormatWeight(w) << '\n';
  }
}

std::string SerializeTensor(const SemanticTensor& t) {
  std::ostringstream out;
  WriteTensor(out, t);
  return out.str();
}

SemanticTensor ReadTensor(std::istream& in, std::size_t* line_number) {
  std::size_t local_line = 0;
  std::size_t& line_no = line_number ? *line_number : local_line;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing tensor header", line_no + 1);
  ++line_no;
  int order = 0;
  std::size_t dim = 0;
  {
    auto fields = internal::SplitExact(internal::StripCarriageReturn(line), ' ');
    std::optional<int> o;
    std::optional<std::size_t> d;
    if (fields.size() == 2 && fields[0].starts_with("order=") && fields[1].starts_with("dim=")) {
      o = internal::ParseInt<int>(fields[0].substr(6));
      d = internal::ParseInt<std::size_t>(fields[1].substr(4));
    }
    if (!o || !d) throw ParseError("expected 'order=<m> dim=<r>', got '" + line + "'", line_no);
    order = *o;
    dim = *d;
  }
  SemanticTensor shape = [&] {
    try {
      return SemanticTensor(order, dim);
    } catch (const ShapeError& e) {
      throw ParseError(e.what(), line_no);
    }
  }();
  SemanticTensor::Entries entries;
  while (in.peek() != std::char_traits<char>::eof() &&
         std::isdigit(static_cast<unsigned char>(in.peek()))) {
    std::getline(in, line);
    ++line_no;
    auto fields = internal::SplitExact(internal::StripCarriageReturn(line), '\t');
    if (fields.size() != static_cast<std::size_t>(order) + 1) {
      throw ParseError("expected " + std::to_string(order + 1) + " tab-separated fields", line_no);
    }
    MultiIndex index(order);
    for (int k = 0; k < order; ++k) {
      auto i = internal::ParseInt<std::uint32_t>(fields[k]);
      if (!i || *i >= dim) {
        throw ParseError("bad index '" + std::string(fields[k]) + "'", line_no, k + 1);
      }
      index[k] = *i;
    }
    double w = ParseWeight(fields[order], line_no, order + 1);
    std::uint64_t offset = shape.Flatten(index);
    if (!entries.empty() && offset <= entries.rbegin()->first) {
      throw ParseError("entries not in strictly increasing index order", line_no);
    }
    if (w == 0.0) throw ParseError("explicit zero entry", line_no);
    entries.emplace_hint(entries.end(), offset, w);
  }
  return SemanticTensor::FromLinear(order, dim, std::move(entries));
}

SemanticTensor ParseTensor(std::string_view text) {
  std::istringstream in{std::string(text)};
  SemanticTensor t = ReadTensor(in);
  std::string rest;
  while (std::getline(in, rest)) {
    if (!internal::StripCarriageReturn(rest).empty()) {
      throw ParseError("trailing content after tensor: '" + rest + "'", 0);
    }
  }
  return t;
}

}  // namespace catdist
