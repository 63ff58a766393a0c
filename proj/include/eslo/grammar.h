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

// Local grammars: a small textual language of token patterns with tag
// emission. The full syntax is documented in docs/grammar.md.
//
//   %option scope = turn
//   musician := ("le" | "la") <Profession> {NE:pers.hum <Firstname> <Upper>?} ;
//   arrival [prev: "longtemps"] := {DE:pers.speaker <NE:time.date.rel>} ;

#ifndef ESLO_GRAMMAR_H_
#define ESLO_GRAMMAR_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eslo/lexicon.h"
#include "eslo/typology.h"

namespace eslo {

inline constexpr int kUnbounded = -1;

struct PatternNode {
  enum class Kind {
    kLiteral,      // text, case_sensitive
    kCategory,     // text = lexicon category
    kTagSpan,      // family + text = type pattern; matches a whole earlier annotation
    kAnyWord,
    kUppercase,    // word whose first letter is uppercase
    kSequence,     // children (>= 2)
    kAlternation,  // children (>= 2), earlier branches preferred
    kOptional,     // children[0], taking it preferred
    kRepeat,       // children[0], min..max, more iterations preferred
    kEmit,         // children[0] wrapped in an annotation of family/text
  };

  Kind kind = Kind::kLiteral;
  std::string text;
  bool case_sensitive = false;
  Family family = Family::kNE;
  int min = 0;
  int max = 0;
  std::vector<PatternNode> children;

  friend bool operator==(const PatternNode&, const PatternNode&) = default;

  static PatternNode literal(std::string word, bool case_sensitive = false);
  static PatternNode category(std::string name);
  static PatternNode tag_span(Family family, std::string pattern);
  static PatternNode any_word();
  static PatternNode uppercase();
  static PatternNode sequence(std::vector<PatternNode> children);
  static PatternNode alternation(std::vector<PatternNode> children);
  static PatternNode optional(PatternNode child);
  static PatternNode repeat(PatternNode child, int min, int max);
  static PatternNode emit(Family family, std::string type, PatternNode child);
};

// True when the node can match without consuming a token.
bool nullable(const PatternNode& node);

struct Rule {
  std::string name;
  PatternNode pattern;
  // When set, the rule only applies in a turn whose preceding turn contains
  // a match of this pattern.
  std::optional<PatternNode> previous_turn;
  int line = 0;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.name == b.name && a.pattern == b.pattern && a.previous_turn == b.previous_turn;
  }
};

struct GrammarOptions {
  bool events_transparent = true;  // Event tokens are skipped inside matches
  bool turn_scope = false;         // matches may cross Sync marks
  bool opaque_tags = true;         // earlier annotations are single units
  int max_repeat = 8;              // bound for *, + and {m,}

  friend bool operator==(const GrammarOptions&, const GrammarOptions&) = default;
};

// Applies one `key=value` option; throws Error("grammar") when unknown.
void set_grammar_option(GrammarOptions& options, std::string_view key, std::string_view value);

struct Grammar {
  std::vector<Rule> rules;  // priority = declaration order
  GrammarOptions options;

  std::set<std::string> categories() const;
  std::set<std::pair<Family, std::string>> output_tags() const;

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

// Parses grammar text. Emit types and tag patterns are checked against
// `typology`; categories are checked when `lexicon` is given. Errors are
// ParseError("grammar") with line and column.
Grammar parse_grammar(std::string_view text, const TypologyRegistry& typology, const Lexicon* lexicon = nullptr,
                      const std::string& origin = "<grammar>");

std::string print_pattern(const PatternNode& node);
std::string print_grammar(const Grammar& grammar);

}  // namespace eslo

#endif  // ESLO_GRAMMAR_H_
