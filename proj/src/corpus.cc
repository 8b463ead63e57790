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

#include "catdist/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "catdist/error.h"
#include "catdist/log.h"
#include "text_util.h"

namespace catdist {
namespace {

template <typename Map>
std::int64_t Lookup(const Map& map, std::string_view key) {
  auto it = map.find(std::string(key));
  return it == map.end() ? 0 : it->second;
}

template <typename Map>
std::vector<typename Map::const_iterator> SortedByKey(const Map& map) {
  std::vector<typename Map::const_iterator> its;
  its.reserve(map.size());
  for (auto it = map.begin(); it != map.end(); ++it) its.push_back(it);
  std::sort(its.begin(), its.end(), [](auto a, auto b) { return a->first < b->first; });
  return its;
}

void RequireWindow(int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1, got " + std::to_string(window));
}

CooccurrenceModel CountShard(std::span<const Sentence> sentences, int window) {
  CooccurrenceModel model;
  for (const Sentence& s : sentences) model.AddSentence(s, window);
  return model;
}

}  // namespace

Sentence ParseCorpusLine(std::string_view line, std::size_t line_number) {
  line = internal::StripCarriageReturn(line);
  Sentence sentence;
  if (line.empty()) return sentence;
  std::size_t column = 1;
  for (std::string_view field : internal::SplitExact(line, ' ')) {
    if (field.empty()) throw ParseError("empty token", line_number, column);
    if (field.find('\t') != std::string_view::npos) {
      throw ParseError("tab inside token", line_number, column);
    }
    Token token;
    std::size_t us = field.rfind('_');
    if (us == std::string_view::npos) {
      token.lemma = field;
    } else {
      token.lemma = field.substr(0, us);
      token.pos = field.substr(us + 1);
    }
    if (token.lemma.empty()) throw ParseError("empty lemma", line_number, column);
    sentence.push_back(std::move(token));
    column += field.size() + 1;
  }
  return sentence;
}

std::vector<Sentence> ReadCorpus(std::istream& in) {
  std::vector<Sentence> corpus;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    Sentence s = ParseCorpusLine(line, line_number);
    if (!s.empty()) corpus.push_back(std::move(s));
  }
  return corpus;
}

std::int64_t CooccurrenceModel::target_count(std::string_view lemma) const {
  return Lookup(target_counts, lemma);
}

std::int64_t CooccurrenceModel::context_count(std::string_view target,
                                              std::string_view context) const {
  auto it = context_counts.find(std::string(target));
  return it == context_counts.end() ? 0 : Lookup(it->second, context);
}

std::int64_t CooccurrenceModel::context_total(std::string_view context) const {
  return Lookup(context_totals, context);
}

std::int64_t CooccurrenceModel::sentences_containing(std::string_view lemma) const {
  return Lookup(sentence_frequency, lemma);
}

void CooccurrenceModel::AddSentence(const Sentence& sentence, int window) {
  RequireWindow(window);
  if (sentence.empty()) return;
  const std::size_t n = sentence.size();
  const std::size_t w = static_cast<std::size_t>(window);
  std::unordered_set<std::string_view> seen;
  for (std::size_t t = 0; t < n; ++t) {
    const std::string& target = sentence[t].lemma;
    ++target_counts[target];
    if (seen.insert(target).second) ++sentence_frequency[target];
    std::size_t lo = t >= w ? t - w : 0;
    std::size_t hi = std::min(n - 1, t + w);
    if (lo == hi) continue;
    auto& row = context_counts[target];
    for (std::size_t c = lo; c <= hi; ++c) {
      if (c == t) continue;
      ++row[sentence[c].lemma];
      ++context_totals[sentence[c].lemma];
    }
  }
  total_tokens += static_cast<std::int64_t>(n);
  ++total_sentences;
}

void CooccurrenceModel::Merge(const CooccurrenceModel& other) {
  for (const auto& [k, v] : other.target_counts) target_counts[k] += v;
  for (const auto& [t, row] : other.context_counts) {
    auto& mine = context_counts[t];
    for (const auto& [c, v] : row) mine[c] += v;
  }
  for (const auto& [k, v] : other.context_totals) context_totals[k] += v;
  for (const auto& [k, v] : other.sentence_frequency) sentence_frequency[k] += v;
  total_tokens += other.total_tokens;
  total_sentences += other.total_sentences;
}

CooccurrenceModel CountCooccurrences(std::span<const Sentence> corpus, int window,
                                     unsigned threads) {
  RequireWindow(window);
  threads = std::max(1u, std::min<unsigned>(threads, corpus.size() / 1024 + 1));
  if (threads == 1) return CountShard(corpus, window);

  std::vector<CooccurrenceModel> partial(threads);
  std::vector<std::jthread> workers;
  const std::size_t per = (corpus.size() + threads - 1) / threads;
  for (unsigned k = 0; k < threads; ++k) {
    std::size_t begin = std::min(corpus.size(), k * per);
    std::size_t end = std::min(corpus.size(), begin + per);
    workers.emplace_back([&, k, begin, end] {
      partial[k] = CountShard(corpus.subspan(begin, end - begin), window);
    });
  }
  workers.clear();
  CooccurrenceModel model = std::move(partial[0]);
  for (unsigned k = 1; k < threads; ++k) model.Merge(partial[k]);
  return model;
}

CooccurrenceModel CountCorpusFile(const std::string& path, int window, unsigned threads) {
  RequireWindow(window);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus '" + path + "'");
  constexpr std::size_t kChunk = 1 << 16;
  CooccurrenceModel model;
  std::vector<Sentence> chunk;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    Sentence s = ParseCorpusLine(line, line_number);
    if (!s.empty()) chunk.push_back(std::move(s));
    if (chunk.size() == kChunk) {
      model.Merge(CountCooccurrences(chunk, window, threads));
      chunk.clear();
    }
  }
  if (!chunk.empty()) model.Merge(CountCooccurrences(chunk, window, threads));
  return model;
}

VocabIndex SelectBasis(const CooccurrenceModel& model, std::size_t k,
                       const std::set<std::string>& stoplist) {
  if (k < 1) throw std::invalid_argument("basis size must be >= 1");
  std::vector<std::pair<std::string, std::int64_t>> candidates;
  candidates.reserve(model.target_counts.size());
  for (const auto& [lemma, count] : model.target_counts) {
    if (count > 0 && !stoplist.contains(lemma)) candidates.emplace_back(lemma, count);
  }
  auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end(), by_rank);
  std::vector<std::string> words;
  words.reserve(take);
  for (std::size_t i = 0; i < take; ++i) words.push_back(std::move(candidates[i].first));
  return VocabIndex(std::move(words));
}

void WeightingScheme::Validate() const {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (basis_size < 1) throw std::invalid_argument("basis size must be >= 1");
}

std::string_view WeightingName(WeightingKind kind) {
  switch (kind) {
    case WeightingKind::kProbabilityRatio:
      return "probability-ratio";
    case WeightingKind::kTfIdf:
      return "tf-idf";
  }
  return "?";
}

WeightingKind ParseWeighting(std::string_view name) {
  if (name == "probability-ratio") return WeightingKind::kProbabilityRatio;
  if (name == "tf-idf" || name == "tfidf") return WeightingKind::kTfIdf;
  throw std::invalid_argument("unknown weighting scheme '" + std::string(name) + "'");
}

SemanticTensor BuildVector(std::string_view target, const CooccurrenceModel& model,
                           const VocabIndex& vocab, const WeightingScheme& scheme) {
  if (vocab.empty()) throw std::invalid_argument("empty basis");
  const std::size_t dim = vocab.size();
  auto row_it = model.context_counts.find(std::string(target));
  if (model.target_count(target) == 0) {
    LogWarning("no counts for '" + std::string(target) + "'; using the zero vector");
    return SemanticTensor(1, dim);
  }
  if (row_it == model.context_counts.end()) return SemanticTensor(1, dim);
  const auto& row = row_it->second;

  std::vector<std::pair<std::uint32_t, double>> weights;
  switch (scheme.kind) {
    case WeightingKind::kProbabilityRatio: {
      double row_sum = 0.0;
      double context_sum = 0.0;
      for (const std::string& n : vocab.words()) {
        row_sum += static_cast<double>(Lookup(row, n));
        context_sum += static_cast<double>(model.context_total(n));
      }
      if (row_sum == 0.0) break;
      for (std::size_t i = 0; i < dim; ++i) {
        double count = static_cast<double>(Lookup(row, vocab.word(i)));
        if (count == 0.0) continue;
        double p_given_target = count / row_sum;
        double p_context = static_cast<double>(model.context_total(vocab.word(i))) / context_sum;
        weights.emplace_back(static_cast<std::uint32_t>(i), p_given_target / p_context);
      }
      break;
    }
    case WeightingKind::kTfIdf: {
      for (std::size_t i = 0; i < dim; ++i) {
        double count = static_cast<double>(Lookup(row, vocab.word(i)));
        std::int64_t df = model.sentences_containing(vocab.word(i));
        if (count == 0.0 || df == 0) continue;
        double idf = std::log(static_cast<double>(model.total_sentences) / static_cast<double>(df));
        weights.emplace_back(static_cast<std::uint32_t>(i), count * idf);
      }
      break;
    }
  }
  return SemanticTensor::Vector(dim, weights);
}

const SemanticTensor* VectorLexicon::find(std::string_view lemma) const {
  auto it = vectors.find(std::string(lemma));
  return it == vectors.end() ? nullptr : &it->second;
}

VectorLexicon BuildLexicon(const CooccurrenceModel& model, const VocabIndex& vocab,
                           const WeightingScheme& scheme, std::string vocab_file) {
  VectorLexicon lexicon;
  lexicon.dim = vocab.size();
  lexicon.vocab_file = std::move(vocab_file);
  for (const auto& [lemma, count] : model.target_counts) {
    if (count > 0) lexicon.vectors.emplace(lemma, BuildVector(lemma, model, vocab, scheme));
  }
  return lexicon;
}

void WriteCounts(std::ostream& out, const CooccurrenceModel& model) {
  out << "META\t" << model.total_tokens << '\t' << model.total_sentences << '\n';
  for (auto it : SortedByKey(model.target_counts)) {
    if (it->second != 0) out << "T\t" << it->first << '\t' << it->second << '\n';
  }
  for (auto row : SortedByKey(model.context_counts)) {
    for (auto it : SortedByKey(row->second)) {
      if (it->second != 0) {
        out << "C\t" << row->first << '\t' << it->first << '\t' << it->second << '\n';
      }
    }
  }
  for (auto it : SortedByKey(model.sentence_frequency)) {
    if (it->second != 0) out << "D\t" << it->first << '\t' << it->second << '\n';
  }
}

CooccurrenceModel ReadCounts(std::istream& in) {
  CooccurrenceModel model;
  std::string line;
  std::size_t line_number = 0;
  bool saw_meta = false;
  auto count_field = [&](std::string_view f) {
    auto v = internal::ParseInt<std::int64_t>(f);
    if (!v || *v < 0) throw ParseError("bad count '" + std::string(f) + "'", line_number);
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = internal::StripCarriageReturn(line);
    if (view.empty()) continue;
    auto f = internal::SplitExact(view, '\t');
    if (f[0] == "META" && f.size() == 3) {
      model.total_tokens = count_field(f[1]);
      model.total_sentences = count_field(f[2]);
      saw_meta = true;
    } else if (f[0] == "T" && f.size() == 3) {
      model.target_counts[std::string(f[1])] += count_field(f[2]);
    } else if (f[0] == "C" && f.size() == 4) {
      std::int64_t c = count_field(f[3]);
      model.context_counts[std::string(f[1])][std::string(f[2])] += c;
      model.context_totals[std::string(f[2])] += c;
    } else if (f[0] == "D" && f.size() == 3) {
      model.sentence_frequency[std::string(f[1])] += count_field(f[2]);
    } else {
      throw ParseError("unrecognised count record", line_number);
    }
  }
  if (line_number > 0 && !saw_meta) throw ParseError("missing META record", 0);
  return model;
}

void WriteVocab(std::ostream& out, const VocabIndex& vocab) {
  for (const std::string& w : vocab.words()) out << w << '\n';
}

VocabIndex ReadVocab(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view w = internal::StripCarriageReturn(line);
    if (w.empty() || w.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("basis line must hold exactly one lemma", line_number);
    }
    words.emplace_back(w);
  }
  try {
    return VocabIndex(std::move(words));
  } catch (const DataError& e) {
    throw ParseError(e.what(), 0);
  }
}

void WriteVectorLexicon(std::ostream& out, const VectorLexicon& lexicon) {
  out << "# vocab=" << lexicon.vocab_file << " dim=" << lexicon.dim << '\n';
  for (const auto& [lemma, v] : lexicon.vectors) {
    out << lemma;
    for (const auto& [k, w] : v.entries()) out << '\t' << k << ':' << FormatWeight(w);
    out << '\n';
  }
}

VectorLexicon ReadVectorLexicon(std::istream& in) {
  VectorLexicon lexicon;
  std::string line;
  std::size_t line_number = 0;
  if (!std::getline(in, line)) throw ParseError("missing vector lexicon header", 1);
  ++line_number;
  {
    auto f = internal::SplitExact(internal::StripCarriageReturn(line), ' ');
    std::optional<std::size_t> dim;
    if (f.size() == 3 && f[0] == "#" && f[1].starts_with("vocab=") && f[2].starts_with("dim=")) {
      lexicon.vocab_file = f[1].substr(6);
      dim = internal::ParseInt<std::size_t>(f[2].substr(4));
    }
    if (!dim || *dim == 0) throw ParseError("expected '# vocab=<file> dim=<r>' header", 1);
    lexicon.dim = *dim;
  }
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = internal::StripCarriageReturn(line);
    if (view.empty()) continue;
    auto f = internal::SplitExact(view, '\t');
    if (f[0].empty()) throw ParseError("empty lemma", line_number, 1);
    std::vector<std::pair<std::uint32_t, double>> weights;
    std::int64_t previous = -1;
    for (std::size_t k = 1; k < f.size(); ++k) {
      std::size_t colon = f[k].find(':');
      auto idx = colon == std::string_view::npos
                     ? std::nullopt
                     : internal::ParseInt<std::uint32_t>(f[k].substr(0, colon));
      if (!idx || *idx >= lexicon.dim || static_cast<std::int64_t>(*idx) <= previous) {
        throw ParseError("bad or non-ascending index in '" + std::string(f[k]) + "'", line_number,
                         k + 1);
      }
      previous = *idx;
      weights.emplace_back(*idx, ParseWeight(f[k].substr(colon + 1), line_number, k + 1));
    }
    auto [it, inserted] = lexicon.vectors.emplace(std::string(f[0]),
                                                  SemanticTensor::Vector(lexicon.dim, weights));
    if (!inserted) throw ParseError("duplicate lemma '" + std::string(f[0]) + "'", line_number);
  }
  return lexicon;
}

std::set<std::string> ReadStoplist(std::istream& in) {
  std::set<std::string> stop;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view w = internal::StripCarriageReturn(line);
    auto fields = internal::SplitWhitespace(w);
    if (!fields.empty()) stop.emplace(fields.front());
  }
  return stop;
}

}  // namespace catdist
