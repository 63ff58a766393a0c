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

#include "eslo/grammar.h"

namespace eslo {

namespace {

// Printing contexts, loosest first. Parentheses are added whenever the
// parser would otherwise flatten or regroup the node.
enum class Context { kTop, kAlternative, kSequenceItem, kOperand };

void print(const PatternNode& n, Context ctx, std::string& out);

void print_quoted(const std::string& word, char quote, std::string& out) {
  out += quote;
  for (char c : word) {
    if (c == quote || c == '\\') out += '\\';
    out += c;
  }
  out += quote;
}

void print_parenthesized(const PatternNode& n, std::string& out) {
  out += '(';
  print(n, Context::kTop, out);
  out += ')';
}

void print(const PatternNode& n, Context ctx, std::string& out) {
  using K = PatternNode::Kind;
  switch (n.kind) {
    case K::kLiteral:
      print_quoted(n.text, n.case_sensitive ? '\'' : '"', out);
      return;
    case K::kCategory:
      out += '<' + n.text + '>';
      return;
    case K::kTagSpan:
      out += '<' + std::string(family_name(n.family)) + ':' + n.text + '>';
      return;
    case K::kAnyWord:
      out += "<AnyWord>";
      return;
    case K::kUppercase:
      out += "<Upper>";
      return;
    case K::kSequence:
      if (ctx == Context::kSequenceItem || ctx == Context::kOperand) return print_parenthesized(n, out);
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ' ';
        print(n.children[i], Context::kSequenceItem, out);
      }
      return;
    case K::kAlternation:
      if (ctx != Context::kTop) return print_parenthesized(n, out);
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += " | ";
        print(n.children[i], Context::kAlternative, out);
      }
      return;
    case K::kOptional:
    case K::kRepeat: {
      const auto& child = n.children[0];
      bool compound = child.kind == K::kSequence || child.kind == K::kAlternation || child.kind == K::kOptional ||
                      child.kind == K::kRepeat;
      if (compound) print_parenthesized(child, out);
      else print(child, Context::kOperand, out);
      if (n.kind == K::kOptional) {
        out += '?';
      } else if (n.max == kUnbounded && n.min == 0) {
        out += '*';
      } else if (n.max == kUnbounded && n.min == 1) {
        out += '+';
      } else if (n.max == kUnbounded) {
        out += '{' + std::to_string(n.min) + ",}";
      } else if (n.min == n.max) {
        out += '{' + std::to_string(n.min) + '}';
      } else {
        out += '{' + std::to_string(n.min) + ',' + std::to_string(n.max) + '}';
      }
      return;
    }
    case K::kEmit:
      out += '{' + std::string(family_name(n.family)) + ':' + n.text + ' ';
      print(n.children[0], Context::kTop, out);
      out += '}';
      return;
  }
}

}  // namespace

std::string print_pattern(const PatternNode& node) {
  std::string out;
  print(node, Context::kTop, out);
  return out;
}

std::string print_grammar(const Grammar& grammar) {
  std::string out;
  const GrammarOptions defaults;
  const auto& o = grammar.options;
  if (o.events_transparent != defaults.events_transparent)
    out += std::string("%option events = ") + (o.events_transparent ? "transparent" : "blocking") + '\n';
  if (o.turn_scope != defaults.turn_scope)
    out += std::string("%option scope = ") + (o.turn_scope ? "turn" : "segment") + '\n';
  if (o.opaque_tags != defaults.opaque_tags)
    out += std::string("%option tags = ") + (o.opaque_tags ? "opaque" : "transparent") + '\n';
  if (o.max_repeat != defaults.max_repeat) out += "%option max_repeat = " + std::to_string(o.max_repeat) + '\n';
  if (!out.empty()) out += '\n';
  for (const auto& rule : grammar.rules) {
    out += rule.name;
    if (rule.previous_turn) out += " [prev: " + print_pattern(*rule.previous_turn) + ']';
    out += " := " + print_pattern(rule.pattern) + " ;\n";
  }
  return out;
}

}  // namespace eslo
