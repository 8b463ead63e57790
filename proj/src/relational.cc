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

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "catdist/error.h"
#include "catdist/log.h"
#include "text_util.h"

namespace catdist {
namespace {

std::string Describe(const RelationInstance& r) {
  std::string s = r.head + "(";
  for (std::size_t i = 0; i < r.arguments.size(); ++i) {
    if (i) s += ", ";
    s += r.arguments[i];
  }
  return s + ")";
}

enum class Role { kOther, kNoun, kVerb, kAdjective, kAdverb };

Role RoleOf(std::string_view pos) {
  if (pos.starts_with("ADJ") || pos.starts_with("AJ") || pos.starts_with("J")) {
    return Role::kAdjective;
  }
  if (pos.starts_with("ADV") || pos.starts_with("AV") || pos.starts_with("R")) {
    return Role::kAdverb;
  }
  if (pos.starts_with("N")) return Role::kNoun;
  if (pos.starts_with("V")) return Role::kVerb;
  return Role::kOther;
}

}  // namespace

std::string_view AccumulationName(Accumulation a) {
  return a == Accumulation::kSum ? "sum" : "product";
}

Accumulation ParseAccumulation(std::string_view name) {
  if (name == "sum") return Accumulation::kSum;
  if (name == "product") return Accumulation::kProduct;
  throw std::invalid_argument("unknown accumulation '" + std::string(name) + "'");
}

LearnedTensor LearnTensor(std::string_view head, std::span<const RelationInstance> instances,
                          const VectorLexicon& vectors, int arity, Accumulation accumulation) {
  if (arity < 1) throw DataError("arity must be >= 1");
  if (vectors.dim == 0) throw DataError("vector lexicon has no dimension");
  LearnedTensor out{SemanticTensor(arity, vectors.dim), 0, 0};
  bool first = true;
  std::vector<SemanticTensor> factors;
  for (const RelationInstance& r : instances) {
    if (r.head != head) {
      throw DataError("instance " + Describe(r) + " does not belong to '" + std::string(head) +
                      "'");
    }
    if (r.arity() != arity) {
      throw DataError("instance " + Describe(r) + " has " + std::to_string(r.arity()) +
                      " arguments, expected " + std::to_string(arity));
    }
    factors.clear();
    for (const std::string& a : r.arguments) {
      const SemanticTensor* v = vectors.find(a);
      if (!v) break;
      factors.push_back(*v);
    }
    if (factors.size() != r.arguments.size()) {
      ++out.skipped;
      continue;
    }
    SemanticTensor term = Kron(factors);
    if (accumulation == Accumulation::kSum || first) {
      out.tensor = first ? std::move(term) : Add(out.tensor, term);
    } else {
      out.tensor = Pointwise(out.tensor, term);
    }
    first = false;
    ++out.instances;
  }
  return out;
}

const RelationalLexicon::Entry* RelationalLexicon::find(std::string_view lemma, int arity) const {
  auto it = entries_.find(Key(std::string(lemma), arity));
  return it == entries_.end() ? nullptr : &it->second;
}

void RelationalLexicon::Insert(std::string lemma, int arity, Entry entry) {
  if (entry.tensor.order() != arity) {
    throw DataError("tensor for '" + lemma + "' has order " + std::to_string(entry.tensor.order()) +
                    " but arity " + std::to_string(arity));
  }
  if (dim_ == 0) dim_ = entry.tensor.dim();
  if (entry.tensor.dim() != dim_) {
    throw DataError("tensor for '" + lemma + "' has dimension " +
                    std::to_string(entry.tensor.dim()) + ", lexicon has " + std::to_string(dim_));
  }
  entries_.insert_or_assign(Key(std::move(lemma), arity), std::move(entry));
}

RelationalLexicon LearnLexicon(std::span<const RelationInstance> relations,
                               const VectorLexicon& vectors, Accumulation accumulation,
                               LearnStats* stats) {
  std::map<RelationalLexicon::Key, std::vector<RelationInstance>> groups;
  for (const RelationInstance& r : relations) {
    groups[{r.head, r.arity()}].push_back(r);
  }
  RelationalLexicon lexicon(vectors.dim);
  LearnStats local;
  for (auto& [key, group] : groups) {
    std::sort(group.begin(), group.end());
    LearnedTensor learned = LearnTensor(key.first, group, vectors, key.second, accumulation);
    local.instances += group.size();
    local.skipped += learned.skipped;
    lexicon.Insert(key.first, key.second, {std::move(learned.tensor), group.size()});
  }
  if (local.skipped > 0) {
    LogWarning(std::to_string(local.skipped) + " of " + std::to_string(local.instances) +
               " relation instances skipped for missing argument vectors");
  }
  if (stats) *stats = local;
  return lexicon;
}

std::vector<RelationInstance> ReadRelations(std::istream& in, std::size_t* rejected) {
  std::vector<RelationInstance> out;
  std::size_t bad = 0;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = internal::StripCarriageReturn(line);
    if (view.empty()) continue;
    auto f = internal::SplitExact(view, '\t');
    auto arity = f.size() >= 2 ? internal::ParseInt<int>(f[1]) : std::nullopt;
    bool ok = arity && *arity >= 1 && f.size() == static_cast<std::size_t>(*arity) + 2 &&
              std::none_of(f.begin(), f.end(), [](std::string_view s) { return s.empty(); });
    if (!ok) {
      ++bad;
      LogWarning("relations line " + std::to_string(line_number) +
                 ": expected head<TAB>arity<TAB>arity arguments; skipped");
      continue;
    }
    RelationInstance r;
    r.head = f[0];
    for (std::size_t k = 2; k < f.size(); ++k) r.arguments.emplace_back(f[k]);
    out.push_back(std::move(r));
  }
  if (rejected) *rejected = bad;
  return out;
}

void WriteRelations(std::ostream& out, std::span<const RelationInstance> relations) {
  for (const RelationInstance& r : relations) {
    out << r.head << '\t' << r.arity();
    for (const std::string& a : r.arguments) out << '\t' << a;
    out << '\n';
  }
}

void WriteRelationalLexicon(std::ostream& out, const RelationalLexicon& lexicon) {
  for (const auto& [key, entry] : lexicon.entries()) {
    out << "WORD\t" << key.first << '\t' << key.second << '\t' << entry.k << '\n';
    WriteTensor(out, entry.tensor);
  }
}

RelationalLexicon ReadRelationalLexicon(std::istream& in) {
  RelationalLexicon lexicon;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = internal::StripCarriageReturn(line);
    if (view.empty()) continue;
    auto f = internal::SplitExact(view, '\t');
    auto arity = f.size() == 4 ? internal::ParseInt<int>(f[2]) : std::nullopt;
    auto k = f.size() == 4 ? internal::ParseInt<std::size_t>(f[3]) : std::nullopt;
    if (f[0] != "WORD" || f[1].empty() || !arity || !k) {
      throw ParseError("expected WORD<TAB>lemma<TAB>arity<TAB>k", line_number);
    }
    std::size_t header_line = line_number;
    SemanticTensor t = ReadTensor(in, &line_number);
    try {
      lexicon.Insert(std::string(f[1]), *arity, {std::move(t), *k});
    } catch (const DataError& e) {
      throw ParseError(e.what(), header_line);
    }
  }
  return lexicon;
}

std::vector<RelationInstance> ExtractRelations(std::span<const Sentence> corpus) {
  std::vector<RelationInstance> out;
  for (const Sentence& s : corpus) {
    std::vector<Role> roles;
    roles.reserve(s.size());
    for (const Token& t : s) roles.push_back(RoleOf(t.pos));

    auto nearest_noun = [&](std::size_t from, int step) -> std::optional<std::size_t> {
      for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(from) + step;
           i >= 0 && i < static_cast<std::ptrdiff_t>(s.size()); i += step) {
        if (roles[i] == Role::kNoun) return static_cast<std::size_t>(i);
        if (roles[i] == Role::kVerb) return std::nullopt;
      }
      return std::nullopt;
    };
    // Arguments of each verb position, filled in order so adverbs can reuse them.
    std::vector<std::vector<std::string>> verb_args(s.size());

    for (std::size_t i = 0; i < s.size(); ++i) {
      switch (roles[i]) {
        case Role::kVerb: {
          auto subject = nearest_noun(i, -1);
          auto object = nearest_noun(i, +1);
          if (!subject) break;
          std::vector<std::string> args{s[*subject].lemma};
          if (object) args.push_back(s[*object].lemma);
          verb_args[i] = args;
          out.push_back({s[i].lemma, std::move(args)});
          break;
        }
        case Role::kAdjective: {
          for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (roles[j] == Role::kNoun) {
              out.push_back({s[i].lemma, {s[j].lemma}});
              break;
            }
            if (roles[j] != Role::kAdjective && roles[j] != Role::kOther) break;
          }
          break;
        }
        case Role::kAdverb: {
          for (std::size_t j = i; j-- > 0;) {
            if (roles[j] == Role::kVerb) {
              if (!verb_args[j].empty()) out.push_back({s[i].lemma, verb_args[j]});
              break;
            }
          }
          break;
        }
        default:
          break;
      }
    }
  }
  return out;
}

}  // namespace catdist
