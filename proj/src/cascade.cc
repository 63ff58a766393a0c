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

#include "eslo/cascade.h"

#include <algorithm>

#include "eslo/match_view.h"

namespace eslo {

void AnnotatedDocument::normalize() {
  std::stable_sort(annotations.begin(), annotations.end(), nesting_order);
  std::vector<const Annotation*> open;
  for (auto& a : annotations) {
    while (!open.empty() && (open.back()->turn != a.turn || open.back()->end <= a.begin)) open.pop_back();
    a.depth = static_cast<int>(open.size());
    open.push_back(&a);
  }
  for (const auto& a : annotations) layers = std::max(layers, a.layer);
}

AnnotatedDocument tokenized(Document doc) {
  AnnotatedDocument out;
  out.tokens.reserve(doc.turns.size());
  for (std::size_t t = 0; t < doc.turns.size(); ++t) out.tokens.push_back(tokenize_turn(doc, t));
  out.document = std::move(doc);
  return out;
}

void Cascade::add_pass(std::string name, Transducer transducer) {
  add_pass(Pass{std::move(name), std::make_shared<const Transducer>(std::move(transducer))});
}

void Cascade::add_pass(Pass pass) {
  for (const auto& p : passes_)
    if (p.name == pass.name) throw Error("cascade", "duplicate pass name '" + pass.name + "'");
  passes_.push_back(std::move(pass));
}

void Cascade::append(const Cascade& other) {
  for (const auto& p : other.passes_) add_pass(p);
}

namespace {

// Token ranges matched independently: Sync-delimited segments, or the
// whole turn.
std::vector<std::pair<std::size_t, std::size_t>> scopes(const std::vector<Token>& tokens, bool turn_scope) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (turn_scope) {
    if (!tokens.empty()) out.emplace_back(0, tokens.size());
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i <= tokens.size(); ++i) {
    if (i == tokens.size() || tokens[i].kind == TokenKind::kSync) {
      if (i > start) out.emplace_back(start, i);
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

AnnotatedDocument apply_pass(const Pass& pass, AnnotatedDocument doc, std::optional<bool> events_transparent) {
  const Transducer& t = *pass.transducer;
  GrammarOptions options = t.options();
  if (events_transparent) options.events_transparent = *events_transparent;
  const int layer = doc.layers + 1;
  const std::size_t rule_count = t.rule_names().size();

  std::vector<Annotation> added;
  int rank = 0;
  for (std::size_t turn = 0; turn < doc.tokens.size(); ++turn) {
    const auto& tokens = doc.tokens[turn];
    std::vector<char> enabled(rule_count, 1);
    for (std::size_t r = 0; r < rule_count; ++r) {
      const Transducer* guard = t.guard(static_cast<int>(r));
      if (!guard) continue;
      bool ok = false;
      if (turn > 0) {
        GrammarOptions guard_options = guard->options();
        if (events_transparent) guard_options.events_transparent = *events_transparent;
        const auto& prev = doc.tokens[turn - 1];
        MatchView view(prev, doc.annotations, turn - 1, 0, prev.size(), guard_options);
        ok = guard->search(view);
      }
      enabled[r] = ok;
    }
    if (std::none_of(enabled.begin(), enabled.end(), [](char e) { return e != 0; })) continue;

    for (auto [begin, end] : scopes(tokens, options.turn_scope)) {
      MatchView view(tokens, doc.annotations, turn, begin, end, options);
      Transducer::Matcher matcher(t, view, &enabled);
      std::size_t pos = begin;
      while (pos < end) {
        std::optional<MatchResult> m;
        if (view.can_start(pos)) m = matcher.match(pos);
        if (!m) {
          ++pos;
          continue;
        }
        const std::string& rule = t.rule_names()[static_cast<std::size_t>(m->rule)];
        for (const auto& span : resolve_actions(m->actions)) {
          Annotation a;
          a.family = span.family;
          a.type = span.type;
          a.turn = turn;
          a.begin = span.begin;
          a.end = span.end;
          a.layer = layer;
          a.rank = rank + span.rank;
          a.pass = pass.name;
          a.rule = rule;
          if (std::any_of(doc.annotations.begin(), doc.annotations.end(),
                          [&](const Annotation& e) { return same_annotation(a, e); }))
            continue;
          for (const auto& e : doc.annotations) {
            if (a.crosses(e))
              throw PassError(pass.name, rule,
                              std::string(family_name(a.family)) + " " + a.type + " over tokens [" +
                                  std::to_string(a.begin) + "," + std::to_string(a.end) + ") of turn " +
                                  std::to_string(turn) + " crosses " + std::string(family_name(e.family)) + " " +
                                  e.type);
          }
          added.push_back(std::move(a));
        }
        rank += static_cast<int>(m->actions.size());
        pos = std::max(m->end, pos + 1);
      }
    }
  }

  doc.annotations.insert(doc.annotations.end(), added.begin(), added.end());
  doc.layers = layer;
  doc.provenance.push_back(pass.name);
  doc.normalize();
  return doc;
}

AnnotatedDocument run_cascade(const Cascade& cascade, AnnotatedDocument doc) {
  for (const auto& pass : cascade.passes()) doc = apply_pass(pass, std::move(doc), cascade.events_transparent);
  return doc;
}

AnnotatedDocument run_cascade(const Cascade& cascade, Document doc) {
  return run_cascade(cascade, tokenized(std::move(doc)));
}

std::vector<NestingViolation> check_nesting(const AnnotatedDocument& doc) {
  std::vector<NestingViolation> out;
  const auto& as = doc.annotations;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto& a = as[i];
    std::size_t limit = a.turn < doc.tokens.size() ? doc.tokens[a.turn].size() : 0;
    if (a.begin >= a.end || a.end > limit)
      out.push_back({i, i, "annotation " + a.type + " is empty or leaves turn " + std::to_string(a.turn)});
    for (std::size_t j = i + 1; j < as.size(); ++j)
      if (a.crosses(as[j]))
        out.push_back({i, j, "annotation " + a.type + " crosses " + as[j].type + " in turn " + std::to_string(a.turn)});
  }
  return out;
}

std::vector<NestingViolation> check_typology(const AnnotatedDocument& doc, const TypologyRegistry& registry) {
  std::vector<NestingViolation> out;
  const auto& as = doc.annotations;  // nesting order: containers precede their contents
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto& a = as[i];
    if (!registry.of(a.family).accepts(a.type))
      out.push_back({i, i, "unknown " + std::string(family_name(a.family)) + " type " + a.type});
    for (std::size_t j = i + 1; j < as.size(); ++j) {
      const auto& b = as[j];
      if (b.turn != a.turn || b.begin >= a.end) break;
      if (a.contains(b) && !nesting_allowed(a.family, a.type, b.family, b.type))
        out.push_back({i, j,
                       std::string(family_name(a.family)) + " " + a.type + " may not contain " +
                           std::string(family_name(b.family)) + " " + b.type});
    }
  }
  return out;
}

}  // namespace eslo
