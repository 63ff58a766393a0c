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

// What a pattern sees of one scope (a Sync segment or a whole turn): the
// tokens, which of them are skipped, and the earlier annotations that can
// be consumed whole. Both the compiled matcher and the reference
// interpreter consume input only through this view.

#ifndef ESLO_MATCH_VIEW_H_
#define ESLO_MATCH_VIEW_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eslo/annotation.h"
#include "eslo/grammar.h"
#include "eslo/lexicon.h"
#include "eslo/transcript.h"

namespace eslo {

// A single-step test, the leaves of a pattern.
struct Predicate {
  PatternNode::Kind kind = PatternNode::Kind::kAnyWord;
  std::string text;  // literal (folded unless case-sensitive) or tag pattern
  bool case_sensitive = false;
  Family family = Family::kNE;
  std::string category_name;
  const LexiconCategory* category = nullptr;

  // Builds the predicate for a leaf node; throws Error("grammar") for an
  // unknown category.
  static Predicate from_node(const PatternNode& leaf, const Lexicon& lexicon);
  bool operator==(const Predicate& o) const {
    return kind == o.kind && text == o.text && case_sensitive == o.case_sensitive && family == o.family &&
           category_name == o.category_name;
  }
};

// A token range consumed by one predicate step; `begin` is the first
// consumed token (transparent tokens before it are skipped).
struct Unit {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class MatchView {
 public:
  // `tokens` are the turn's tokens; `annotations` may hold any turn's
  // annotations, only those of `turn` are used. The scope is [begin, end).
  MatchView(std::span<const Token> tokens, std::span<const Annotation> annotations, std::size_t turn,
            std::size_t begin, std::size_t end, const GrammarOptions& options);

  std::size_t begin() const { return begin_; }
  std::size_t end() const { return end_; }
  std::span<const Token> tokens() const { return tokens_; }

  // Units `p` can consume from position `pos`, in preference order.
  std::vector<Unit> units(const Predicate& p, std::size_t pos) const;

  // Positions where a scan may try a match.
  bool can_start(std::size_t pos) const;

  static bool word_matches(const Predicate& p, const Token& token);

 private:
  bool transparent(std::size_t i) const;
  std::size_t next_solid(std::size_t pos) const;

  std::span<const Token> tokens_;
  std::size_t begin_;
  std::size_t end_;
  GrammarOptions options_;
  std::vector<char> covered_;  // token lies inside an annotation
  std::vector<std::string> folded_;
  // Per start token: groups of annotations sharing one span, usable as a
  // single unit, outer first.
  struct Group {
    std::size_t end = 0;
    std::vector<const Annotation*> members;
  };
  std::vector<std::vector<Group>> groups_;
};

}  // namespace eslo

#endif  // ESLO_MATCH_VIEW_H_
