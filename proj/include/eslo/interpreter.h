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

// Reference semantics: exhaustive backtracking over the pattern tree. Slow,
// but obviously faithful to the grammar; the compiled transducer must agree
// with it on every input.

#ifndef ESLO_INTERPRETER_H_
#define ESLO_INTERPRETER_H_

#include <cstddef>
#include <vector>

#include "eslo/grammar.h"
#include "eslo/lexicon.h"
#include "eslo/match_view.h"
#include "eslo/transducer.h"

namespace eslo {

struct RuleMatch {
  std::size_t begin = 0;  // first consumed token
  std::size_t end = 0;
  std::vector<PlacedAction> actions;
};

// Every way `pattern` matches from `pos`, longest first; equal lengths keep
// the pattern's preference order. Repeats are bounded by `max_repeat`.
std::vector<RuleMatch> interpret(const PatternNode& pattern, const MatchView& view, std::size_t pos,
                                 const Lexicon& lexicon, int max_repeat);

}  // namespace eslo

#endif  // ESLO_INTERPRETER_H_
