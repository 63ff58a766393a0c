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

#include <cctype>
#include <charconv>
#include <set>

#include "eslo/error.h"
#include "eslo/grammar.h"
#include "eslo/text.h"

namespace eslo {

PatternNode PatternNode::literal(std::string word, bool case_sensitive) {
  PatternNode n;
  n.kind = Kind::kLiteral;
  n.text = std::move(word);
  n.case_sensitive = case_sensitive;
  return n;
}

PatternNode PatternNode::category(std::string name) {
  PatternNode n;
  n.kind = Kind::kCategory;
  n.text = std::move(name);
  return n;
}

PatternNode PatternNode::tag_span(Family family, std::string pattern) {
  PatternNode n;
  n.kind = Kind::kTagSpan;
  n.family = family;
  n.text = std::move(pattern);
  return n;
}

PatternNode PatternNode::any_word() {
  PatternNode n;
  n.kind = Kind::kAnyWord;
  return n;
}

PatternNode PatternNode::uppercase() {
  PatternNode n;
  n.kind = Kind::kUppercase;
  return n;
}

PatternNode PatternNode::sequence(std::vector<PatternNode> children) {
  if (children.size() == 1) return std::move(children.front());
  PatternNode n;
  n.kind = Kind::kSequence;
  n.children = std::move(children);
  return n;
}

PatternNode PatternNode::alternation(std::vector<PatternNode> children) {
  if (children.size() == 1) return std::move(children.front());
  PatternNode n;
  n.kind = Kind::kAlternation;
  n.children = std::move(children);
  return n;
}

PatternNode PatternNode::optional(PatternNode child) {
  PatternNode n;
  n.kind = Kind::kOptional;
  n.children.push_back(std::move(child));
  return n;
}

PatternNode PatternNode::repeat(PatternNode child, int min, int max) {
  PatternNode n;
  n.kind = Kind::kRepeat;
  n.min = min;
  n.max = max;
  n.children.push_back(std::move(child));
  return n;
}

PatternNode PatternNode::emit(Family family, std::string type, PatternNode child) {
  PatternNode n;
  n.kind = Kind::kEmit;
  n.family = family;
  n.text = std::move(type);
  n.children.push_back(std::move(child));
  return n;
}

bool nullable(const PatternNode& node) {
  using K = PatternNode::Kind;
  switch (node.kind) {
    case K::kLiteral:
    case K::kCategory:
    case K::kTagSpan:
    case K::kAnyWord:
    case K::kUppercase:
      return false;
    case K::kSequence:
      for (const auto& c : node.children)
        if (!nullable(c)) return false;
      return true;
    case K::kAlternation:
      for (const auto& c : node.children)
        if (nullable(c)) return true;
      return false;
    case K::kOptional:
      return true;
    case K::kRepeat:
      return node.min == 0 || nullable(node.children[0]);
    case K::kEmit:
      return nullable(node.children[0]);
  }
  return false;
}

void set_grammar_option(GrammarOptions& options, std::string_view key, std::string_view value) {
  auto bad = [&] {
    throw Error("grammar", "invalid value '" + std::string(value) + "' for option " + std::string(key));
  };
  if (key == "events") {
    if (value == "transparent") options.events_transparent = true;
    else if (value == "blocking") options.events_transparent = false;
    else bad();
  } else if (key == "scope") {
    if (value == "segment") options.turn_scope = false;
    else if (value == "turn") options.turn_scope = true;
    else bad();
  } else if (key == "tags") {
    if (value == "opaque") options.opaque_tags = true;
    else if (value == "transparent") options.opaque_tags = false;
    else bad();
  } else if (key == "max_repeat") {
    int n = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc() || ptr != value.data() + value.size() || n < 1 || n > 64) bad();
    options.max_repeat = n;
  } else {
    throw Error("grammar", "unknown option '" + std::string(key) + "'");
  }
}

namespace {

void collect(const PatternNode& n, std::set<std::string>* categories, std::set<std::pair<Family, std::string>>* tags) {
  if (n.kind == PatternNode::Kind::kCategory && categories) categories->insert(n.text);
  if (n.kind == PatternNode::Kind::kEmit && tags) tags->emplace(n.family, n.text);
  for (const auto& c : n.children) collect(c, categories, tags);
}

bool has_emit(const PatternNode& n) {
  if (n.kind == PatternNode::Kind::kEmit) return true;
  for (const auto& c : n.children)
    if (has_emit(c)) return true;
  return false;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool type_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_' ||
         c == '.' || c == '*';
}

class Parser {
 public:
  Parser(std::string_view text, const TypologyRegistry& typology, const Lexicon* lexicon, const std::string& origin)
      : s_(text), typology_(typology), lexicon_(lexicon), origin_(origin) {}

  Grammar parse() {
    Grammar g;
    std::set<std::string> names;
    skip();
    while (!at_end()) {
      if (peek() == '%') {
        parse_option(g.options);
      } else if (ident_start(peek())) {
        Rule r = parse_rule();
        if (!names.insert(r.name).second) fail("duplicate rule '" + r.name + "'", r.line, 1);
        g.rules.push_back(std::move(r));
      } else if (peek() == '}' || peek() == ')' || peek() == ']') {
        fail(std::string("unbalanced '") + peek() + "'");
      } else {
        fail("expected a rule name");
      }
      skip();
    }
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail(message, line_, column()); }
  [[noreturn]] void fail(const std::string& message, int line, int col) const {
    throw ParseError("grammar", origin_ + ": " + message, line, col);
  }

  int column() const { return static_cast<int>(pos_ - line_start_) + 1; }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  void skip() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  std::string identifier() {
    skip();
    if (!ident_start(peek())) fail("expected an identifier");
    std::size_t start = pos_;
    while (!at_end() && ident_char(peek())) advance();
    return std::string(s_.substr(start, pos_ - start));
  }

  int integer() {
    skip();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (start == pos_) fail("expected a number");
    int n = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, n);
    if (ec != std::errc()) fail("number out of range");
    return n;
  }

  void parse_option(GrammarOptions& options) {
    int line = line_, col = column();
    advance();  // '%'
    if (identifier() != "option") fail("expected '%option'", line, col);
    std::string key = identifier();
    expect('=');
    skip();
    std::size_t start = pos_;
    while (!at_end() && ident_char(peek())) advance();
    std::string value(s_.substr(start, pos_ - start));
    try {
      set_grammar_option(options, key, value);
    } catch (const Error& e) {
      fail(e.what(), line, col);
    }
  }

  Rule parse_rule() {
    Rule r;
    r.line = line_;
    r.name = identifier();
    skip();
    if (peek() == '[') {
      advance();
      if (identifier() != "prev") fail("expected 'prev' in rule guard");
      expect(':');
      int line = line_, col = column();
      r.previous_turn = parse_alternation();
      if (nullable(*r.previous_turn)) fail("guard pattern matches the empty sequence", line, col);
      if (has_emit(*r.previous_turn)) fail("guard pattern cannot emit tags", line, col);
      expect(']');
    }
    skip();
    if (peek() != ':' || peek(1) != '=') fail("expected ':='");
    advance();
    advance();
    skip();
    int line = line_, col = column();
    r.pattern = parse_alternation();
    if (nullable(r.pattern)) fail("rule '" + r.name + "' matches the empty sequence", line, col);
    skip();
    if (peek() != ';') fail("expected ';' after rule '" + r.name + "'");
    advance();
    return r;
  }

  PatternNode parse_alternation() {
    std::vector<PatternNode> branches;
    branches.push_back(parse_sequence());
    skip();
    while (peek() == '|') {
      advance();
      branches.push_back(parse_sequence());
      skip();
    }
    return PatternNode::alternation(std::move(branches));
  }

  bool starts_primary() {
    skip();
    char c = peek();
    return c == '"' || c == '\'' || c == '<' || c == '(' || c == '{';
  }

  PatternNode parse_sequence() {
    std::vector<PatternNode> items;
    while (starts_primary()) items.push_back(parse_postfix());
    if (items.empty()) {
      if (at_end()) fail("unexpected end of grammar");
      fail(std::string("unexpected '") + peek() + "'");
    }
    return PatternNode::sequence(std::move(items));
  }

  bool repeat_follows() {
    if (peek() != '{') return false;
    std::size_t i = 1;
    while (pos_ + i < s_.size() && (s_[pos_ + i] == ' ' || s_[pos_ + i] == '\t')) ++i;
    return pos_ + i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + i]));
  }

  PatternNode parse_postfix() {
    PatternNode node = parse_primary();
    while (true) {
      skip();
      char c = peek();
      if (c == '?') {
        advance();
        node = PatternNode::optional(std::move(node));
      } else if (c == '*') {
        advance();
        node = PatternNode::repeat(std::move(node), 0, kUnbounded);
      } else if (c == '+') {
        advance();
        node = PatternNode::repeat(std::move(node), 1, kUnbounded);
      } else if (repeat_follows()) {
        int line = line_, col = column();
        advance();
        int min = integer();
        int max = min;
        skip();
        if (peek() == ',') {
          advance();
          skip();
          max = peek() == '}' ? kUnbounded : integer();
        }
        expect('}');
        if (max != kUnbounded && max < min) fail("repeat bound {m,n} with n < m", line, col);
        if (max == 0) fail("repeat bound {0} matches nothing", line, col);
        node = PatternNode::repeat(std::move(node), min, max);
      } else {
        return node;
      }
    }
  }

  PatternNode parse_primary() {
    skip();
    char c = peek();
    int line = line_, col = column();
    if (c == '"' || c == '\'') return parse_literal();
    if (c == '(') {
      advance();
      PatternNode inner = parse_alternation();
      skip();
      if (peek() != ')') fail("unbalanced '(' opened here", line, col);
      advance();
      return inner;
    }
    if (c == '<') return parse_angle();
    if (c == '{') return parse_emit();
    fail("expected a pattern");
  }

  PatternNode parse_literal() {
    char quote = peek();
    int line = line_, col = column();
    advance();
    std::string raw;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string", line, col);
      char c = peek();
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (at_end()) fail("unterminated string", line, col);
        c = peek();
      }
      raw += c;
      advance();
    }
    std::vector<PatternNode> words;
    for (auto& tok : tokenize(text::nfc(raw))) words.push_back(PatternNode::literal(tok.surface, quote == '\''));
    if (words.empty()) fail("empty literal", line, col);
    return PatternNode::sequence(std::move(words));
  }

  PatternNode parse_angle() {
    int line = line_, col = column();
    advance();  // '<'
    std::string name = identifier();
    PatternNode node;
    skip();
    if (peek() == ':') {
      advance();
      auto family = parse_family(name);
      if (!family) fail("unknown annotation family '" + name + "'", line, col);
      skip();
      std::size_t start = pos_;
      while (!at_end() && type_char(peek())) advance();
      std::string pattern(s_.substr(start, pos_ - start));
      if (!typology_.of(*family).valid_pattern(pattern))
        fail("unknown " + std::string(family_name(*family)) + " type pattern '" + pattern + "'", line, col);
      node = PatternNode::tag_span(*family, pattern);
    } else if (name == "AnyWord") {
      node = PatternNode::any_word();
    } else if (name == "Upper") {
      node = PatternNode::uppercase();
    } else {
      if (!is_valid_category_name(name)) fail("invalid category name '" + name + "'", line, col);
      if (lexicon_ && !lexicon_->has_category(name)) fail("unknown lexicon category '" + name + "'", line, col);
      node = PatternNode::category(name);
    }
    skip();
    bool optional = false;
    if (peek() == '?') {
      advance();
      optional = true;
    }
    expect('>');
    return optional ? PatternNode::optional(std::move(node)) : node;
  }

  PatternNode parse_emit() {
    int line = line_, col = column();
    advance();  // '{'
    std::string fam = identifier();
    auto family = parse_family(fam);
    if (!family) fail("unknown annotation family '" + fam + "'", line, col);
    expect(':');
    skip();
    std::size_t start = pos_;
    while (!at_end() && type_char(peek()) && peek() != '*') advance();
    std::string type(s_.substr(start, pos_ - start));
    if (!typology_.of(*family).accepts(type))
      fail("unknown " + std::string(family_name(*family)) + " type '" + type + "'", line, col);
    PatternNode body = parse_alternation();
    skip();
    if (peek() != '}') fail("unbalanced emit bracket opened here", line, col);
    advance();
    return PatternNode::emit(*family, type, std::move(body));
  }

  std::string_view s_;
  const TypologyRegistry& typology_;
  const Lexicon* lexicon_;
  std::string origin_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
};

}  // namespace

std::set<std::string> Grammar::categories() const {
  std::set<std::string> out;
  for (const auto& r : rules) {
    collect(r.pattern, &out, nullptr);
    if (r.previous_turn) collect(*r.previous_turn, &out, nullptr);
  }
  return out;
}

std::set<std::pair<Family, std::string>> Grammar::output_tags() const {
  std::set<std::pair<Family, std::string>> out;
  for (const auto& r : rules) collect(r.pattern, nullptr, &out);
  return out;
}

Grammar parse_grammar(std::string_view text, const TypologyRegistry& typology, const Lexicon* lexicon,
                      const std::string& origin) {
  return Parser(text, typology, lexicon, origin).parse();
}

}  // namespace eslo
