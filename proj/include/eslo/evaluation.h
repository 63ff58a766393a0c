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

// Precision and recall of system annotations against gold ones.
//
//   detection  NE spans overlapping a gold NE span
//   type       overlap and equal type
//   bracket    exact span and equal type (span only with bracket_requires_type = false)
//   de         DE annotations, exact span and equal type
//
// Each gold and each system annotation takes part in at most one pair.
// Precision and recall of an empty comparison are 1.0.

#ifndef ESLO_EVALUATION_H_
#define ESLO_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eslo/annotation.h"
#include "eslo/cascade.h"

namespace eslo {

enum class EvalLevel { kDetection, kType, kBracket, kDesignating };
inline constexpr EvalLevel kAllLevels[] = {EvalLevel::kDetection, EvalLevel::kType, EvalLevel::kBracket,
                                           EvalLevel::kDesignating};

std::string_view level_name(EvalLevel level);   // "detection", ...
std::string_view level_label(EvalLevel level);  // "Entities", ...

enum class MatchStrategy {
  kMaximum,  // largest one-to-one pairing
  kGreedy,   // system annotations in document order take the first free gold
};

struct EvalOptions {
  bool bracket_requires_type = true;
  MatchStrategy strategy = MatchStrategy::kMaximum;
};

struct LevelCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  std::int64_t gold() const { return tp + fn; }
  std::int64_t system() const { return tp + fp; }
  double precision() const { return tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp); }
  double recall() const { return tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn); }
  LevelCounts& operator+=(const LevelCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const LevelCounts&, const LevelCounts&) = default;
};

struct EvalReport {
  LevelCounts levels[4];
  std::size_t files = 0;
  std::int64_t gold_entities = 0;     // NE
  std::int64_t gold_designating = 0;  // DE

  LevelCounts& at(EvalLevel level) { return levels[static_cast<int>(level)]; }
  const LevelCounts& at(EvalLevel level) const { return levels[static_cast<int>(level)]; }

  std::string to_json() const;
  std::string to_table() const;
};

// Size of the pairing between `gold` and `system` at `level` (annotations of
// other families are ignored).
std::int64_t count_matches(const std::vector<Annotation>& gold, const std::vector<Annotation>& system,
                           EvalLevel level, const EvalOptions& options = {});

LevelCounts score_level(const std::vector<Annotation>& gold, const std::vector<Annotation>& system, EvalLevel level,
                        const EvalOptions& options = {});

// Throws Error("evaluate") when the lists differ in length or a pair of
// documents differs in its tokens.
EvalReport score(const std::vector<AnnotatedDocument>& gold, const std::vector<AnnotatedDocument>& system,
                 const EvalOptions& options = {});

// Names the levels whose gold count is below `threshold`.
std::optional<std::string> sparsity_warning(const EvalReport& report, std::int64_t threshold = 100);

struct CorpusFile {
  std::string path;
  std::uint64_t bytes = 0;
};

struct CorpusSplit {
  std::vector<CorpusFile> work;
  std::vector<CorpusFile> eval;
  std::uint64_t work_bytes = 0;
  std::uint64_t eval_bytes = 0;
  double eval_fraction = 0;  // achieved share of bytes
};

// Picks as many evaluation files as fit in fraction x total bytes, smallest
// first; `seed` orders files of equal size. At least one file lands on each
// side. Throws Error("split") for fewer than 2 files or a fraction outside
// (0, 1).
CorpusSplit split_corpus(std::vector<CorpusFile> files, double fraction, std::uint64_t seed);

}  // namespace eslo

#endif  // ESLO_EVALUATION_H_
