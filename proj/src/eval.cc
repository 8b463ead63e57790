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

#include "catdist/eval.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "catdist/error.h"
#include "text_util.h"

namespace catdist {
namespace {

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the mean of ranks i+1..j+1.
    double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("zero rank variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

bool IsConstant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string Cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

nlohmann::json OptionalJson(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

DatasetArity ParseDatasetArity(std::string_view name) {
  if (name == "intransitive") return DatasetArity::kIntransitive;
  if (name == "transitive") return DatasetArity::kTransitive;
  throw std::invalid_argument("arity must be 'intransitive' or 'transitive'");
}

PhraseSpec DatasetEntry::TargetPhrase() const {
  return object ? PhraseSpec::Transitive(subject, target_verb, *object)
                : PhraseSpec::Intransitive(subject, target_verb);
}

PhraseSpec DatasetEntry::LandmarkPhrase() const {
  return object ? PhraseSpec::Transitive(subject, landmark_verb, *object)
                : PhraseSpec::Intransitive(subject, landmark_verb);
}

std::vector<DatasetEntry> LoadDataset(std::istream& in, DatasetArity arity) {
  const bool transitive = arity == DatasetArity::kTransitive;
  const std::size_t columns = transitive ? 7 : 6;
  std::vector<DatasetEntry> entries;
  std::string line;
  std::size_t line_number = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_number;
    auto f = internal::SplitWhitespace(internal::StripCarriageReturn(line));
    if (f.empty()) continue;
    if (f.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " columns, got " +
                           std::to_string(f.size()),
                       line_number);
    }
    if (header) {
      header = false;
      continue;
    }
    DatasetEntry e;
    std::size_t c = 0;
    e.annotator = f[c++];
    e.target_verb = f[c++];
    e.subject = f[c++];
    if (transitive) e.object = std::string(f[c++]);
    e.landmark_verb = f[c++];
    auto score = internal::ParseInt<int>(f[c]);
    if (!score || *score < 1 || *score > 7) {
      throw ParseError("score '" + std::string(f[c]) + "' is not an integer in 1..7", line_number,
                       c + 1);
    }
    e.score = *score;
    ++c;
    std::string hilo = Upper(f[c]);
    if (hilo == "HIGH") {
      e.hilo = HiLo::kHigh;
    } else if (hilo == "LOW") {
      e.hilo = HiLo::kLow;
    } else {
      throw ParseError("class '" + std::string(f[c]) + "' is neither HIGH nor LOW", line_number,
                       c + 1);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<DatasetEntry> LoadDatasetFile(const std::string& path, DatasetArity arity) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  return LoadDataset(in, arity);
}

void WriteDataset(std::ostream& out, std::span<const DatasetEntry> entries, DatasetArity arity) {
  const bool transitive = arity == DatasetArity::kTransitive;
  out << (transitive ? "participant verb subject object landmark input hilo\n"
                     : "participant verb noun landmark input hilo\n");
  for (const DatasetEntry& e : entries) {
    out << e.annotator << ' ' << e.target_verb << ' ' << e.subject << ' ';
    if (transitive) out << e.object.value_or("-") << ' ';
    out << e.landmark_verb << ' ' << e.score << ' ' << (e.hilo == HiLo::kHigh ? "HIGH" : "LOW")
        << '\n';
  }
}

ScoreResult ScoreEntries(std::span<const DatasetEntry> entries, ModelKind kind,
                         const Lexicons& lexicons, unsigned threads) {
  std::vector<std::optional<double>> scores(entries.size());
  auto score_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        scores[i] = Similarity(entries[i].TargetPhrase(), entries[i].LandmarkPhrase(), kind,
                               lexicons);
      } catch (const CompositionError&) {
        scores[i].reset();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, entries.size() / 16 + 1));
  if (threads == 1) {
    score_range(0, entries.size());
  } else {
    std::vector<std::jthread> workers;
    const std::size_t per = (entries.size() + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
      std::size_t begin = std::min(entries.size(), k * per);
      std::size_t end = std::min(entries.size(), begin + per);
      workers.emplace_back(score_range, begin, end);
    }
  }
  ScoreResult result;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i]) {
      result.scored.push_back({i, *scores[i]});
    } else {
      ++result.skipped;
    }
  }
  return result;
}

double SpearmanRho(std::span<const double> model_scores, std::span<const double> human_scores) {
  if (model_scores.size() != human_scores.size()) {
    throw std::invalid_argument("score lists differ in length");
  }
  if (model_scores.size() < 2) throw std::invalid_argument("need at least two scores");
  std::vector<double> rx = AverageRanks(model_scores);
  std::vector<double> ry = AverageRanks(human_scores);
  return Pearson(rx, ry);
}

HighLowMeans ComputeHighLowMeans(std::span<const DatasetEntry> entries,
                                 std::span<const ScoredEntry> scored) {
  double sum[2] = {0.0, 0.0};
  std::size_t count[2] = {0, 0};
  for (const ScoredEntry& s : scored) {
    int c = entries[s.row].hilo == HiLo::kHigh ? 0 : 1;
    sum[c] += s.score;
    ++count[c];
  }
  HighLowMeans means;
  if (count[0]) means.high = sum[0] / static_cast<double>(count[0]);
  if (count[1]) means.low = sum[1] / static_cast<double>(count[1]);
  return means;
}

double PermutationPValue(std::span<const double> model_scores,
                         std::span<const double> human_scores, std::size_t iterations,
                         std::uint64_t seed) {
  if (iterations < 1000) throw std::invalid_argument("permutation test needs >= 1000 iterations");
  const double observed = std::abs(SpearmanRho(model_scores, human_scores));
  // Ranks are permutation-equivariant, so shuffle ranks once instead of
  // re-ranking every permutation.
  std::vector<double> rx = AverageRanks(model_scores);
  std::vector<double> ry = AverageRanks(human_scores);
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  // Guard against rounding making an identical permutation look smaller.
  const double threshold = observed - 1e-12;
  for (std::size_t it = 0; it < iterations; ++it) {
    std::shuffle(ry.begin(), ry.end(), rng);
    if (std::abs(Pearson(rx, ry)) >= threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(iterations);
}

EvaluationReport EvaluateModel(std::span<const DatasetEntry> entries, ModelKind kind,
                               const Lexicons& lexicons, const EvaluationOptions& options) {
  ScoreResult result = ScoreEntries(entries, kind, lexicons, options.threads);
  EvaluationReport report;
  report.model = std::string(ModelName(kind));
  report.entries = result.scored.size();
  report.skipped = result.skipped;
  HighLowMeans means = ComputeHighLowMeans(entries, result.scored);
  report.high_mean = means.high;
  report.low_mean = means.low;

  std::vector<double> model, human;
  for (const ScoredEntry& s : result.scored) {
    model.push_back(s.score);
    human.push_back(static_cast<double>(entries[s.row].score));
  }
  if (model.size() >= 2 && !IsConstant(model) && !IsConstant(human)) {
    report.rho = SpearmanRho(model, human);
    if (options.permutations > 0) {
      report.p_value = PermutationPValue(model, human, options.permutations, options.seed);
    }
  }
  return report;
}

std::vector<EvaluationReport> EvaluateModels(std::span<const DatasetEntry> entries,
                                             std::span<const ModelKind> models,
                                             const Lexicons& lexicons,
                                             const EvaluationOptions& options) {
  std::vector<ModelKind> order(models.begin(), models.end());
  if (std::find(order.begin(), order.end(), ModelKind::kBaseline) == order.end()) {
    order.insert(order.begin(), ModelKind::kBaseline);
  }
  std::vector<EvaluationReport> reports;
  for (ModelKind kind : order) reports.push_back(EvaluateModel(entries, kind, lexicons, options));
  return reports;
}

std::string RenderReport(std::span<const EvaluationReport> reports) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-14s %7s %7s %7s\n", "Model", "High", "Low", "rho");
  out += buf;
  out += std::string(14, '-') + ' ' + std::string(7, '-') + ' ' + std::string(7, '-') + ' ' +
         std::string(7, '-') + '\n';
  for (const EvaluationReport& r : reports) {
    std::snprintf(buf, sizeof(buf), "%-14s %7s %7s %7s\n", r.model.c_str(),
                  Cell(r.high_mean).c_str(), Cell(r.low_mean).c_str(), Cell(r.rho).c_str());
    out += buf;
  }
  return out;
}

std::string ReportJson(std::span<const EvaluationReport> reports) {
  nlohmann::json doc = nlohmann::json::array();
  for (const EvaluationReport& r : reports) {
    doc.push_back({{"model", r.model},
                   {"high_mean", OptionalJson(r.high_mean)},
                   {"low_mean", OptionalJson(r.low_mean)},
                   {"rho", OptionalJson(r.rho)},
                   {"p_value", OptionalJson(r.p_value)},
                   {"entries", r.entries},
                   {"skipped", r.skipped}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace catdist
