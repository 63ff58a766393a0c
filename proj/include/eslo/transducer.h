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

// A grammar compiled to an epsilon-free finite-state transducer. Every
// transition consumes one unit of the match view and carries the tag
// actions that fire just before it; accept options carry the trailing
// actions. Matching picks the longest match from a position, ties going to
// the earliest rule and then to the earliest alternative.

#ifndef ESLO_TRANSDUCER_H_
#define ESLO_TRANSDUCER_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eslo/grammar.h"
#include "eslo/lexicon.h"
#include "eslo/match_view.h"

namespace eslo {

struct EmitAction {
  bool open = true;
  Family family = Family::kNE;
  std::string type;
  friend bool operator==(const EmitAction&, const EmitAction&) = default;
};

// An action resolved to a token position: opens sit at the start of the
// next consumed unit, closes at the end of the previous one.
struct PlacedAction {
  EmitAction action;
  std::size_t pos = 0;
  friend bool operator==(const PlacedAction&, const PlacedAction&) = default;
};

struct MatchResult {
  std::size_t begin = 0;
  std::size_t end = 0;
  int rule = -1;
  std::vector<PlacedAction> actions;
};

// A tag produced by a match. Empty spans are dropped; `rank` is the order
// of the opening action, so it sorts outer tags first on equal spans.
struct EmittedSpan {
  Family family = Family::kNE;
  std::string type;
  std::size_t begin = 0;
  std::size_t end = 0;
  int rank = 0;
  friend bool operator==(const EmittedSpan&, const EmittedSpan&) = default;
};

std::vector<EmittedSpan> resolve_actions(const std::vector<PlacedAction>& actions);

class Transducer {
 public:
  struct Transition {
    int predicate = 0;
    std::vector<int> actions;
    int target = 0;
  };
  struct Accept {
    int rule = 0;
    std::vector<int> actions;
  };
  struct State {
    std::vector<Transition> transitions;
    std::vector<Accept> accepts;
  };

  // Longest-match search from single positions of one view. Results are
  // memoized per (state, position) for the lifetime of the matcher.
  class Matcher {
   public:
    // `enabled` flags rules by index; null enables all.
    Matcher(const Transducer& transducer, const MatchView& view, const std::vector<char>* enabled = nullptr);
    std::optional<MatchResult> match(std::size_t pos);

   private:
    struct Entry {
      int end = -2;  // -2 unknown, -1 no match
      int choice = 0;  // transition index, or -1 - accept index
      int unit = 0;
    };
    int best(int state, std::size_t pos);
    Entry& entry(int state, std::size_t pos);

    const Transducer& t_;
    const MatchView& view_;
    const std::vector<char>* enabled_;
    std::vector<Entry> memo_;
  };

  std::size_t state_count() const { return states_.size(); }
  std::size_t transition_count() const;
  const std::vector<State>& states() const { return states_; }
  const GrammarOptions& options() const { return options_; }
  const std::vector<std::string>& rule_names() const { return rule_names_; }
  const std::vector<Predicate>& predicates() const { return predicates_; }
  const std::vector<EmitAction>& actions() const { return actions_; }
  const Lexicon& lexicon() const { return *lexicon_; }

  // Guard of `rule`, or null.
  const Transducer* guard(int rule) const;

  // True when a match starts anywhere in the view.
  bool search(const MatchView& view) const;

  // Self-contained JSON form, lexicon included.
  std::string to_json() const;
  static Transducer from_json(const std::string& json);

 private:
  friend Transducer compile(const Grammar& grammar, std::shared_ptr<const Lexicon> lexicon);

  std::vector<State> states_;
  std::vector<Predicate> predicates_;
  std::vector<EmitAction> actions_;
  std::vector<std::string> rule_names_;
  std::vector<int> guard_of_rule_;
  std::vector<Transducer> guards_;
  GrammarOptions options_;
  std::shared_ptr<const Lexicon> lexicon_;
};

// Compiles `grammar`. Unbounded repeats are unrolled to options.max_repeat;
// an explicit bound above it is an Error("grammar"), as is an unknown
// lexicon category.
Transducer compile(const Grammar& grammar, std::shared_ptr<const Lexicon> lexicon);

}  // namespace eslo

#endif  // ESLO_TRANSDUCER_H_
