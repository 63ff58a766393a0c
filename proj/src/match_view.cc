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

#include "eslo/match_view.h"

#include <algorithm>

#include "eslo/error.h"
#include "eslo/text.h"

namespace eslo {

Predicate Predicate::from_node(const PatternNode& leaf, const Lexicon& lexicon) {
  using K = PatternNode::Kind;
  Predicate p;
  p.kind = leaf.kind;
  switch (leaf.kind) {
    case K::kLiteral:
      p.case_sensitive = leaf.case_sensitive;
      p.text = leaf.case_sensitive ? leaf.text : text::fold(leaf.text);
      break;
    case K::kCategory:
      p.category_name = leaf.text;
      p.category = lexicon.find(leaf.text);
      if (!p.category) throw Error("grammar", "unknown lexicon category '" + leaf.text + "'");
      break;
    case K::kTagSpan:
      p.family = leaf.family;
      p.text = leaf.text;
      break;
    case K::kAnyWord:
    case K::kUppercase:
      break;
    default:
      throw Error("grammar", "not a leaf pattern");
  }
  return p;
}

namespace {

bool is_word(const Token& t) { return t.kind == TokenKind::kWord || t.kind == TokenKind::kTruncatedWord; }

bool word_test(const Predicate& p, const Token& token, std::string_view folded) {
  using K = PatternNode::Kind;
  switch (p.kind) {
    case K::kLiteral:
      return token.is_wordlike() && (p.case_sensitive ? token.surface == p.text : folded == p.text);
    case K::kAnyWord:
      return is_word(token);
    case K::kUppercase:
      return is_word(token) && text::starts_upper(token.surface);
    default:
      return false;
  }
}

}  // namespace

bool MatchView::word_matches(const Predicate& p, const Token& token) {
  return word_test(p, token, p.kind == PatternNode::Kind::kLiteral && !p.case_sensitive ? text::fold(token.surface)
                                                                                         : std::string());
}

MatchView::MatchView(std::span<const Token> tokens, std::span<const Annotation> annotations, std::size_t turn,
                     std::size_t begin, std::size_t end, const GrammarOptions& options)
    : tokens_(tokens), begin_(begin), end_(std::min(end, tokens.size())), options_(options) {
  covered_.assign(tokens_.size(), 0);
  groups_.resize(tokens_.size());
  folded_.resize(tokens_.size());
  for (std::size_t i = begin_; i < end_; ++i)
    if (tokens_[i].is_wordlike()) folded_[i] = text::fold(tokens_[i].surface);

  std::vector<const Annotation*> local;
  for (const auto& a : annotations) {
    if (a.turn != turn || a.begin >= a.end || a.end > tokens_.size()) continue;
    local.push_back(&a);
    for (std::size_t i = a.begin; i < a.end; ++i) covered_[i] = 1;
  }
  std::sort(local.begin(), local.end(), [](const Annotation* a, const Annotation* b) { return nesting_order(*a, *b); });

  for (std::size_t i = 0; i < local.size();) {
    const Annotation* head = local[i];
    Group g;
    g.end = head->end;
    std::size_t j = i;
    while (j < local.size() && local[j]->begin == head->begin && local[j]->end == head->end) g.members.push_back(local[j++]);
    i = j;
    if (head->begin < begin_ || head->end > end_) continue;
    if (options_.opaque_tags) {
      bool enclosed = std::any_of(local.begin(), local.end(), [&](const Annotation* o) {
        return o->begin <= head->begin && head->end <= o->end && (o->begin != head->begin || o->end != head->end);
      });
      if (enclosed) continue;
    }
    groups_[head->begin].push_back(std::move(g));
  }
}

bool MatchView::transparent(std::size_t i) const {
  const Token& t = tokens_[i];
  if (t.kind == TokenKind::kEvent) return options_.events_transparent;
  if (t.kind == TokenKind::kSync) return options_.turn_scope;
  return false;
}

std::size_t MatchView::next_solid(std::size_t pos) const {
  while (pos < end_ && transparent(pos)) ++pos;
  return pos;
}

bool MatchView::can_start(std::size_t pos) const {
  if (pos < begin_ || pos >= end_) return false;
  if (transparent(pos)) return !groups_[pos].empty();
  if (!covered_[pos] || !options_.opaque_tags) return true;
  return !groups_[pos].empty();
}

std::vector<Unit> MatchView::units(const Predicate& p, std::size_t pos) const {
  using K = PatternNode::Kind;
  std::vector<Unit> out;
  if (pos >= end_) return out;
  const std::size_t j = next_solid(pos);
  auto consumable = [&](std::size_t i) {
    return i < end_ && tokens_[i].is_wordlike() && (!options_.opaque_tags || !covered_[i]);
  };

  switch (p.kind) {
    case K::kLiteral:
    case K::kAnyWord:
    case K::kUppercase:
      if (consumable(j) && word_test(p, tokens_[j], folded_[j])) out.push_back({j, j + 1});
      break;
    case K::kCategory: {
      auto cursor = p.category->start();
      std::size_t k = j;
      while (consumable(k)) {
        cursor = p.category->advance(cursor, tokens_[k].surface);
        if (!cursor.alive()) break;
        ++k;
        if (p.category->accepts(cursor)) out.push_back({j, k});
        k = next_solid(k);
      }
      std::reverse(out.begin(), out.end());
      break;
    }
    case K::kTagSpan:
      for (std::size_t k = pos; k <= j && k < end_; ++k) {
        for (const auto& g : groups_[k]) {
          bool hit = std::any_of(g.members.begin(), g.members.end(), [&](const Annotation* a) {
            return a->family == p.family && Typology::pattern_matches(p.text, a->type);
          });
          if (hit) out.push_back({k, g.end});
        }
      }
      std::stable_sort(out.begin(), out.end(), [](const Unit& a, const Unit& b) { return a.end > b.end; });
      break;
    default:
      break;
  }
  return out;
}

}  // namespace eslo
