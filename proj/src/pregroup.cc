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

#include "catdist/pregroup.h"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>

#include "catdist/error.h"

namespace catdist {
namespace {

constexpr std::size_t kMaxTerms = 64;

class Reducer {
 public:
  Reducer(std::span<const SimpleTerm> terms, std::string_view target)
      : terms_(terms), target_(target) {}

  std::optional<ReductionWitness> Run() {
    std::vector<std::size_t> remaining(terms_.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
    if (!Search(remaining)) return std::nullopt;
    ReductionWitness w;
    w.cups = cups_;
    std::sort(w.cups.begin(), w.cups.end());
    w.survivors = survivors_;
    return w;
  }

 private:
  static std::uint64_t Key(const std::vector<std::size_t>& remaining) {
    std::uint64_t key = 0;
    for (std::size_t i : remaining) key |= std::uint64_t{1} << i;
    return key;
  }

  bool Search(const std::vector<std::size_t>& remaining) {
    if (remaining.size() == 1) {
      const SimpleTerm& t = terms_[remaining[0]];
      if (t.adjoint == 0 && t.base == target_) {
        survivors_ = remaining;
        return true;
      }
      return false;
    }
    // Each contraction removes two terms, so only odd lengths can end at one.
    if (remaining.size() % 2 == 0) return false;
    if (!failed_.insert(Key(remaining)).second) return false;
    std::vector<std::size_t> next;
    next.reserve(remaining.size() - 2);
    for (std::size_t p = 0; p + 1 < remaining.size(); ++p) {
      if (!Contracts(terms_[remaining[p]], terms_[remaining[p + 1]])) continue;
      next.assign(remaining.begin(), remaining.begin() + p);
      next.insert(next.end(), remaining.begin() + p + 2, remaining.end());
      cups_.emplace_back(remaining[p], remaining[p + 1]);
      if (Search(next)) return true;
      cups_.pop_back();
    }
    return false;
  }

  std::span<const SimpleTerm> terms_;
  std::string_view target_;
  std::unordered_set<std::uint64_t> failed_;
  std::vector<std::pair<std::size_t, std::size_t>> cups_;
  std::vector<std::size_t> survivors_;
};

std::string CupString(std::pair<std::size_t, std::size_t> cup) {
  return "(" + std::to_string(cup.first) + "," + std::to_string(cup.second) + ")";
}

}  // namespace

std::string ToString(const SimpleTerm& term) {
  std::string s = term.base;
  for (int z = term.adjoint; z < 0; ++z) s += "^l";
  for (int z = term.adjoint; z > 0; --z) s += "^r";
  return s;
}

std::string ToString(const PregroupType& type) {
  if (type.terms.empty()) return "1";
  std::string s;
  for (const SimpleTerm& t : type.terms) {
    if (!s.empty()) s += ' ';
    s += ToString(t);
  }
  return s;
}

PregroupType ParseType(std::string_view text) {
  PregroupType type;
  std::size_t i = 0;
  auto column = [&] { return i + 1; };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (c == '1') {
      ++i;
    } else if (std::isalpha(c)) {
      SimpleTerm term;
      term.base.push_back(static_cast<char>(c));
      ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        term.base.push_back(text[i++]);
      }
      while (i < text.size() && text[i] == '^') {
        if (i + 1 >= text.size()) throw ParseError("dangling '^'", 0, column());
        char marker = text[i + 1];
        if (marker == 'l') {
          --term.adjoint;
        } else if (marker == 'r') {
          ++term.adjoint;
        } else {
          throw ParseError("expected 'l' or 'r' after '^'", 0, column() + 1);
        }
        i += 2;
      }
      type.terms.push_back(std::move(term));
    } else {
      throw ParseError(std::string("unexpected character '") + text[i] + "'", 0, column());
    }
  }
  return type;
}

std::vector<SimpleTerm> Concatenate(std::span<const PregroupType> types) {
  std::vector<SimpleTerm> terms;
  for (const PregroupType& t : types) terms.insert(terms.end(), t.terms.begin(), t.terms.end());
  return terms;
}

std::optional<ReductionWitness> Reduce(std::span<const PregroupType> types,
                                       std::string_view target) {
  std::vector<SimpleTerm> terms = Concatenate(types);
  if (terms.size() > kMaxTerms) {
    throw std::invalid_argument("pregroup reduction supports at most 64 terms");
  }
  return Reducer(terms, target).Run();
}

std::optional<std::string> ValidateWitness(const ReductionWitness& witness,
                                           std::span<const SimpleTerm> terms) {
  std::vector<int> owner(terms.size(), -1);
  for (std::size_t c = 0; c < witness.cups.size(); ++c) {
    auto [i, j] = witness.cups[c];
    if (!(i < j) || j >= terms.size()) return "cup " + CupString(witness.cups[c]) + " out of range";
    if (owner[i] != -1 || owner[j] != -1) {
      return "cup " + CupString(witness.cups[c]) + " overlaps another cup";
    }
    owner[i] = owner[j] = static_cast<int>(c);
    if (!Contracts(terms[i], terms[j])) {
      return "cup " + CupString(witness.cups[c]) + " joins " + ToString(terms[i]) + " and " +
             ToString(terms[j]);
    }
  }
  for (const auto& [i, j] : witness.cups) {
    for (const auto& [k, l] : witness.cups) {
      if (i < k && k < j && j < l) {
        return "cups " + CupString({i, j}) + " and " + CupString({k, l}) + " cross";
      }
    }
  }
  std::vector<std::size_t> uncovered;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (owner[k] == -1) uncovered.push_back(k);
  }
  if (uncovered != witness.survivors) return "survivors do not match uncovered terms";
  return std::nullopt;
}

std::vector<std::size_t> CompositionRecipe::slot_words() const {
  std::vector<std::size_t> words;
  for (const CompositionRecipe& s : slots) words.push_back(s.head);
  return words;
}

CompositionRecipe MakeRecipe(const ReductionWitness& witness,
                             std::span<const PregroupType> word_types) {
  std::vector<std::size_t> word_of;
  std::vector<std::size_t> first_term;
  for (std::size_t w = 0; w < word_types.size(); ++w) {
    first_term.push_back(word_of.size());
    for (std::size_t k = 0; k < word_types[w].terms.size(); ++k) word_of.push_back(w);
  }
  std::vector<SimpleTerm> terms = Concatenate(word_types);
  if (auto problem = ValidateWitness(witness, terms)) {
    throw UnsupportedStructure("invalid witness: " + *problem);
  }
  if (witness.survivors.size() != 1) {
    throw UnsupportedStructure("witness must leave exactly one surviving term");
  }
  const std::size_t survivor = witness.survivors[0];
  if (terms[survivor].adjoint != 0) {
    throw UnsupportedStructure("surviving term " + std::to_string(survivor) + " is an adjoint");
  }

  // Adjoint term position -> argument word it consumes.
  std::vector<int> argument_of(terms.size(), -1);
  // Word -> the cup through which it feeds its head.
  std::vector<int> feeds(word_types.size(), -1);
  for (const auto& cup : witness.cups) {
    auto [i, j] = cup;
    if (word_of[i] == word_of[j]) {
      throw UnsupportedStructure("cup " + CupString(cup) + " lies inside word " +
                                 std::to_string(word_of[i]));
    }
    std::size_t adjoint_term;
    std::size_t plain_term;
    if (terms[i].adjoint == 0) {
      plain_term = i;
      adjoint_term = j;
    } else if (terms[j].adjoint == 0) {
      plain_term = j;
      adjoint_term = i;
    } else {
      throw UnsupportedStructure("cup " + CupString(cup) + " joins two adjoint terms");
    }
    const std::size_t arg = word_of[plain_term];
    if (arg == word_of[survivor] || feeds[arg] != -1) {
      throw UnsupportedStructure("cup " + CupString(cup) + ": word " + std::to_string(arg) +
                                 " already " + (arg == word_of[survivor] ? "heads the phrase"
                                                                          : "feeds another head"));
    }
    feeds[arg] = static_cast<int>(&cup - witness.cups.data());
    argument_of[adjoint_term] = static_cast<int>(arg);
  }

  std::vector<bool> visited(word_types.size(), false);
  auto build = [&](auto&& self, std::size_t word) -> CompositionRecipe {
    visited[word] = true;
    CompositionRecipe r;
    r.head = word;
    for (std::size_t k = 0; k < word_types[word].terms.size(); ++k) {
      std::size_t t = first_term[word] + k;
      if (terms[t].adjoint == 0) continue;
      std::size_t arg = static_cast<std::size_t>(argument_of[t]);
      if (visited[arg]) {
        throw UnsupportedStructure("word " + std::to_string(arg) + " is reached twice");
      }
      r.slots.push_back(self(self, arg));
    }
    return r;
  };
  CompositionRecipe recipe = build(build, word_of[survivor]);
  for (std::size_t w = 0; w < word_types.size(); ++w) {
    if (!visited[w]) {
      throw UnsupportedStructure("word " + std::to_string(w) +
                                 " is not connected to the head through argument cups");
    }
  }
  return recipe;
}

}  // namespace catdist
