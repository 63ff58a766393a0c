// Copyright 2026 The eslo-cascade Authors.
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

#include "eslo/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>

#include "eslo/error.h"
#include "json.hpp"

namespace eslo {

std::string_view level_name(EvalLevel level) {
  switch (level) {
    case EvalLevel::kDetection: return "detection";
    case EvalLevel::kType: return "type";
    case EvalLevel::kBracket: return "bracket";
    case EvalLevel::kDesignating: return "designating";
  }
  return "?";
}

std::string_view level_label(EvalLevel level) {
  switch (level) {
    case EvalLevel::kDetection: return "Entities";
    case EvalLevel::kType: return "Entity types";
    case EvalLevel::kBracket: return "Entity brackets";
    case EvalLevel::kDesignating: return "Designating entities";
  }
  return "?";
}

namespace {

Family level_family(EvalLevel level) { return level == EvalLevel::kDesignating ? Family::kDE : Family::kNE; }

bool overlaps(const Annotation& a, const Annotation& b) {
  return a.turn == b.turn && a.begin < b.end && b.begin < a.end;
}

bool compatible(const Annotation& g, const Annotation& s, EvalLevel level, const EvalOptions& o) {
  switch (level) {
    case EvalLevel::kDetection:
      return overlaps(g, s);
    case EvalLevel::kType:
      return overlaps(g, s) && g.type == s.type;
    case EvalLevel::kBracket:
      return g.turn == s.turn && g.begin == s.begin && g.end == s.end && (!o.bracket_requires_type || g.type == s.type);
    case EvalLevel::kDesignating:
      return g.turn == s.turn && g.begin == s.begin && g.end == s.end && g.type == s.type;
  }
  return false;
}

std::vector<const Annotation*> of_family(const std::vector<Annotation>& as, Family f) {
  std::vector<const Annotation*> out;
  for (const auto& a : as)
    if (a.family == f) out.push_back(&a);
  std::stable_sort(out.begin(), out.end(), [](const Annotation* a, const Annotation* b) { return nesting_order(*a, *b); });
  return out;
}

// Kuhn's augmenting paths over the compatibility graph.
std::int64_t maximum_matching(const std::vector<std::vector<int>>& adjacency, std::size_t gold_count) {
  std::vector<int> gold_owner(gold_count, -1);
  std::int64_t matched = 0;
  std::vector<char> seen;
  auto augment = [&](auto&& self, int s) -> bool {
    for (int g : adjacency[static_cast<std::size_t>(s)]) {
      if (seen[static_cast<std::size_t>(g)]) continue;
      seen[static_cast<std::size_t>(g)] = 1;
      int& owner = gold_owner[static_cast<std::size_t>(g)];
      if (owner < 0 || self(self, owner)) {
        owner = s;
        return true;
      }
    }
    return false;
  };
  for (std::size_t s = 0; s < adjacency.size(); ++s) {
    seen.assign(gold_count, 0);
    if (augment(augment, static_cast<int>(s))) ++matched;
  }
  return matched;
}

}  // namespace

std::int64_t count_matches(const std::vector<Annotation>& gold, const std::vector<Annotation>& system,
                           EvalLevel level, const EvalOptions& options) {
  auto g = of_family(gold, level_family(level));
  auto s = of_family(system, level_family(level));
  std::vector<std::vector<int>> adjacency(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (compatible(*g[j], *s[i], level, options)) adjacency[i].push_back(static_cast<int>(j));

  if (options.strategy == MatchStrategy::kMaximum) return maximum_matching(adjacency, g.size());
  std::vector<char> used(g.size(), 0);
  std::int64_t matched = 0;
  for (const auto& candidates : adjacency) {
    for (int j : candidates) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = 1;
      ++matched;
      break;
    }
  }
  return matched;
}

LevelCounts score_level(const std::vector<Annotation>& gold, const std::vector<Annotation>& system, EvalLevel level,
                        const EvalOptions& options) {
  const Family f = level_family(level);
  auto count = [f](const std::vector<Annotation>& as) {
    return static_cast<std::int64_t>(std::count_if(as.begin(), as.end(), [f](const Annotation& a) { return a.family == f; }));
  };
  LevelCounts c;
  c.tp = count_matches(gold, system, level, options);
  c.fp = count(system) - c.tp;
  c.fn = count(gold) - c.tp;
  return c;
}

namespace {

bool same_tokens(const AnnotatedDocument& a, const AnnotatedDocument& b) {
  if (a.tokens.size() != b.tokens.size()) return false;
  for (std::size_t t = 0; t < a.tokens.size(); ++t) {
    if (a.tokens[t].size() != b.tokens[t].size()) return false;
    for (std::size_t i = 0; i < a.tokens[t].size(); ++i)
      if (a.tokens[t][i].surface != b.tokens[t][i].surface || a.tokens[t][i].kind != b.tokens[t][i].kind) return false;
  }
  return true;
}

}  // namespace

EvalReport score(const std::vector<AnnotatedDocument>& gold, const std::vector<AnnotatedDocument>& system,
                 const EvalOptions& options) {
  if (gold.size() != system.size())
    throw Error("evaluate", "gold has " + std::to_string(gold.size()) + " documents, system has " +
                                std::to_string(system.size()));
  EvalReport report;
  report.files = gold.size();
  for (std::size_t d = 0; d < gold.size(); ++d) {
    if (!same_tokens(gold[d], system[d]))
      throw Error("evaluate", "document mismatch: '" + gold[d].document.source + "' and '" +
                                  system[d].document.source + "' differ in their text");
    for (EvalLevel level : kAllLevels)
      report.at(level) += score_level(gold[d].annotations, system[d].annotations, level, options);
    for (const auto& a : gold[d].annotations) (a.family == Family::kNE ? report.gold_entities : report.gold_designating)++;
  }
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["files"] = files;
  j["gold_entities"] = gold_entities;
  j["gold_designating"] = gold_designating;
  for (EvalLevel level : kAllLevels) {
    const auto& c = at(level);
    j["levels"][std::string(level_name(level))] = {{"tp", c.tp},
                                                   {"fp", c.fp},
                                                   {"fn", c.fn},
                                                   {"precision", c.precision()},
                                                   {"recall", c.recall()}};
  }
  return j.dump(2);
}

std::string EvalReport::to_table() const {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %9s %7s %6s %6s %6s\n", "", "Precision", "Recall", "TP", "FP", "FN");
  out += line;
  for (EvalLevel level : kAllLevels) {
    const auto& c = at(level);
    std::snprintf(line, sizeof line, "%-22s %8.1f%% %6.1f%% %6lld %6lld %6lld\n", std::string(level_label(level)).c_str(),
                  100.0 * c.precision(), 100.0 * c.recall(), static_cast<long long>(c.tp),
                  static_cast<long long>(c.fp), static_cast<long long>(c.fn));
    out += line;
  }
  std::snprintf(line, sizeof line, "%zu files, %lld gold entities, %lld gold designating entities\n", files,
                static_cast<long long>(gold_entities), static_cast<long long>(gold_designating));
  out += line;
  return out;
}

std::optional<std::string> sparsity_warning(const EvalReport& report, std::int64_t threshold) {
  std::string sparse;
  for (EvalLevel level : kAllLevels) {
    if (report.at(level).gold() >= threshold) continue;
    if (!sparse.empty()) sparse += ", ";
    sparse += std::string(level_name(level)) + " (" + std::to_string(report.at(level).gold()) + ")";
  }
  if (sparse.empty()) return std::nullopt;
  return "fewer than " + std::to_string(threshold) + " gold annotations: " + sparse +
         "; precision and recall are unreliable";
}

namespace {

// Uniform integer in [0, bound) by rejection, independent of the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

}  // namespace

CorpusSplit split_corpus(std::vector<CorpusFile> files, double fraction, std::uint64_t seed) {
  if (files.size() < 2) throw Error("split", "need at least 2 files, got " + std::to_string(files.size()));
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error("split", "fraction must lie in (0, 1)");

  std::mt19937_64 rng(seed);
  for (std::size_t i = files.size() - 1; i > 0; --i) std::swap(files[i], files[uniform_below(rng, i + 1)]);
  std::stable_sort(files.begin(), files.end(), [](const CorpusFile& a, const CorpusFile& b) { return a.bytes < b.bytes; });

  std::uint64_t total = 0;
  for (const auto& f : files) total += f.bytes;
  const double budget = fraction * static_cast<double>(total);

  std::size_t take = 0;
  std::uint64_t taken = 0;
  while (take < files.size() && static_cast<double>(taken + files[take].bytes) <= budget) taken += files[take++].bytes;
  take = std::clamp<std::size_t>(take, 1, files.size() - 1);

  CorpusSplit split;
  split.eval.assign(files.begin(), files.begin() + static_cast<std::ptrdiff_t>(take));
  split.work.assign(files.begin() + static_cast<std::ptrdiff_t>(take), files.end());
  auto by_path = [](const CorpusFile& a, const CorpusFile& b) { return a.path < b.path; };
  std::sort(split.eval.begin(), split.eval.end(), by_path);
  std::sort(split.work.begin(), split.work.end(), by_path);
  for (const auto& f : split.eval) split.eval_bytes += f.bytes;
  for (const auto& f : split.work) split.work_bytes += f.bytes;
  split.eval_fraction = total == 0 ? 0.0 : static_cast<double>(split.eval_bytes) / static_cast<double>(total);
  return split;
}

}  // namespace eslo
