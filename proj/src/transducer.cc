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

#include "eslo/transducer.h"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "eslo/error.h"
#include "json.hpp"

namespace eslo {

std::vector<EmittedSpan> resolve_actions(const std::vector<PlacedAction>& actions) {
  struct Open {
    int index;
    std::size_t pos;
  };
  std::vector<Open> stack;
  std::vector<EmittedSpan> out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto& a = actions[i];
    if (a.action.open) {
      stack.push_back({static_cast<int>(i), a.pos});
      continue;
    }
    if (stack.empty()) throw Error("internal", "unbalanced tag actions");
    Open o = stack.back();
    stack.pop_back();
    const auto& opener = actions[static_cast<std::size_t>(o.index)].action;
    if (a.pos > o.pos) out.push_back({opener.family, opener.type, o.pos, a.pos, o.index});
  }
  if (!stack.empty()) throw Error("internal", "unbalanced tag actions");
  std::sort(out.begin(), out.end(), [](const EmittedSpan& a, const EmittedSpan& b) { return a.rank < b.rank; });
  return out;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

struct NfaNode {
  int predicate = -1;  // consuming node: one edge to `target`
  int target = -1;
  std::vector<std::pair<int, int>> eps;  // (target, action or -1), in priority order
  int accept = -1;
};

class Builder {
 public:
  Builder(const GrammarOptions& options, const Lexicon& lexicon) : options_(options), lexicon_(lexicon) {}

  std::vector<NfaNode> nodes;
  std::vector<Predicate> predicates;
  std::vector<EmitAction> actions;

  int node() {
    nodes.emplace_back();
    return static_cast<int>(nodes.size()) - 1;
  }

  void eps(int from, int to, int action = -1) { nodes[static_cast<std::size_t>(from)].eps.emplace_back(to, action); }

  int build(const PatternNode& n, int in) {
    using K = PatternNode::Kind;
    switch (n.kind) {
      case K::kLiteral:
      case K::kCategory:
      case K::kTagSpan:
      case K::kAnyWord:
      case K::kUppercase: {
        int c = node();
        int out = node();
        eps(in, c);
        nodes[static_cast<std::size_t>(c)].predicate = predicate(Predicate::from_node(n, lexicon_));
        nodes[static_cast<std::size_t>(c)].target = out;
        return out;
      }
      case K::kSequence: {
        int cur = in;
        for (const auto& c : n.children) cur = build(c, cur);
        return cur;
      }
      case K::kAlternation: {
        int out = node();
        for (const auto& c : n.children) {
          int s = node();
          eps(in, s);
          eps(build(c, s), out);
        }
        return out;
      }
      case K::kOptional: {
        int out = node();
        int s = node();
        eps(in, s);
        eps(build(n.children[0], s), out);
        eps(in, out);
        return out;
      }
      case K::kRepeat: {
        int max = n.max;
        if (max == kUnbounded) {
          max = options_.max_repeat;
        } else if (max > options_.max_repeat) {
          throw Error("grammar", "repeat bound " + std::to_string(max) + " exceeds max_repeat " +
                                     std::to_string(options_.max_repeat));
        }
        if (n.min > max)
          throw Error("grammar", "repeat minimum " + std::to_string(n.min) + " exceeds max_repeat " +
                                     std::to_string(options_.max_repeat));
        int cur = in;
        for (int i = 0; i < n.min; ++i) cur = build(n.children[0], cur);
        // Remaining iterations nest as (x (x (x)?)?)? so that each count has
        // exactly one path and more iterations are preferred.
        int out = node();
        for (int i = n.min; i < max; ++i) {
          int s = node();
          eps(cur, s);
          eps(cur, out);
          cur = build(n.children[0], s);
        }
        eps(cur, out);
        return out;
      }
      case K::kEmit: {
        int open = action({true, n.family, n.text});
        int close = action({false, n.family, n.text});
        int s = node();
        eps(in, s, open);
        int e = build(n.children[0], s);
        int out = node();
        eps(e, out, close);
        return out;
      }
    }
    throw Error("internal", "unknown pattern kind");
  }

 private:
  int predicate(Predicate p) {
    for (std::size_t i = 0; i < predicates.size(); ++i)
      if (predicates[i] == p) return static_cast<int>(i);
    predicates.push_back(std::move(p));
    return static_cast<int>(predicates.size()) - 1;
  }

  int action(EmitAction a) {
    for (std::size_t i = 0; i < actions.size(); ++i)
      if (actions[i] == a) return static_cast<int>(i);
    actions.push_back(std::move(a));
    return static_cast<int>(actions.size()) - 1;
  }

  const GrammarOptions& options_;
  const Lexicon& lexicon_;
};

}  // namespace

Transducer compile(const Grammar& grammar, std::shared_ptr<const Lexicon> lexicon) {
  if (!lexicon) lexicon = std::make_shared<const Lexicon>();
  Builder b(grammar.options, *lexicon);
  const int start = b.node();
  for (std::size_t r = 0; r < grammar.rules.size(); ++r) {
    int s = b.node();
    b.eps(start, s);
    int e = b.build(grammar.rules[r].pattern, s);
    int acc = b.node();
    b.nodes[static_cast<std::size_t>(acc)].accept = static_cast<int>(r);
    b.eps(e, acc);
  }

  Transducer t;
  t.options_ = grammar.options;
  t.lexicon_ = lexicon;
  t.predicates_ = b.predicates;
  t.actions_ = b.actions;

  // Epsilon elimination. Kept states are the start node and the targets of
  // consuming edges. A node reached twice from the same source keeps its
  // first (highest-priority) path: both paths have the same futures.
  std::unordered_map<int, int> id{{start, 0}};
  std::deque<int> queue{start};
  std::vector<char> visited(b.nodes.size());
  std::vector<int> path;
  while (!queue.empty()) {
    int source = queue.front();
    queue.pop_front();
    Transducer::State state;
    std::fill(visited.begin(), visited.end(), 0);
    auto dfs = [&](auto&& self, int u) -> void {
      if (visited[static_cast<std::size_t>(u)]) return;
      visited[static_cast<std::size_t>(u)] = 1;
      const NfaNode& n = b.nodes[static_cast<std::size_t>(u)];
      if (n.predicate >= 0) {
        auto [it, fresh] = id.emplace(n.target, static_cast<int>(id.size()));
        if (fresh) queue.push_back(n.target);
        state.transitions.push_back({n.predicate, path, it->second});
      }
      if (n.accept >= 0) state.accepts.push_back({n.accept, path});
      for (auto [v, a] : n.eps) {
        if (a >= 0) path.push_back(a);
        self(self, v);
        if (a >= 0) path.pop_back();
      }
    };
    dfs(dfs, source);
    std::size_t index = static_cast<std::size_t>(id.at(source));
    if (t.states_.size() <= index) t.states_.resize(index + 1);
    t.states_[index] = std::move(state);
  }
  t.states_.resize(id.size());

  for (std::size_t r = 0; r < grammar.rules.size(); ++r) {
    t.rule_names_.push_back(grammar.rules[r].name);
    if (!grammar.rules[r].previous_turn) {
      t.guard_of_rule_.push_back(-1);
      continue;
    }
    Grammar g;
    g.options = grammar.options;
    g.options.turn_scope = true;
    g.rules.push_back({grammar.rules[r].name + ".prev", *grammar.rules[r].previous_turn, std::nullopt, 0});
    t.guard_of_rule_.push_back(static_cast<int>(t.guards_.size()));
    t.guards_.push_back(compile(g, lexicon));
  }
  return t;
}

std::size_t Transducer::transition_count() const {
  std::size_t n = 0;
  for (const auto& s : states_) n += s.transitions.size();
  return n;
}

const Transducer* Transducer::guard(int rule) const {
  if (rule < 0 || static_cast<std::size_t>(rule) >= guard_of_rule_.size()) return nullptr;
  int g = guard_of_rule_[static_cast<std::size_t>(rule)];
  return g < 0 ? nullptr : &guards_[static_cast<std::size_t>(g)];
}

// ---------------------------------------------------------------------------
// Matching

Transducer::Matcher::Matcher(const Transducer& transducer, const MatchView& view, const std::vector<char>* enabled)
    : t_(transducer), view_(view), enabled_(enabled) {
  memo_.resize(t_.states_.size() * (view_.end() - view_.begin() + 1));
}

Transducer::Matcher::Entry& Transducer::Matcher::entry(int state, std::size_t pos) {
  return memo_[static_cast<std::size_t>(state) * (view_.end() - view_.begin() + 1) + (pos - view_.begin())];
}

int Transducer::Matcher::best(int state, std::size_t pos) {
  if (entry(state, pos).end != -2) return entry(state, pos).end;
  const State& s = t_.states_[static_cast<std::size_t>(state)];
  Entry result{-1, 0, 0};
  for (std::size_t k = 0; k < s.transitions.size(); ++k) {
    const auto& tr = s.transitions[k];
    auto units = view_.units(t_.predicates_[static_cast<std::size_t>(tr.predicate)], pos);
    for (std::size_t u = 0; u < units.size(); ++u) {
      int end = best(tr.target, units[u].end);
      if (end > result.end) result = {end, static_cast<int>(k), static_cast<int>(u)};
    }
  }
  if (result.end < 0) {
    for (std::size_t a = 0; a < s.accepts.size(); ++a) {
      int rule = s.accepts[a].rule;
      if (enabled_ && !(*enabled_)[static_cast<std::size_t>(rule)]) continue;
      result = {static_cast<int>(pos), -1 - static_cast<int>(a), 0};
      break;
    }
  }
  entry(state, pos) = result;
  return result.end;
}

std::optional<MatchResult> Transducer::Matcher::match(std::size_t pos) {
  if (pos < view_.begin() || pos >= view_.end()) return std::nullopt;
  if (best(0, pos) < 0) return std::nullopt;
  MatchResult m;
  m.begin = pos;
  bool first = true;
  int state = 0;
  std::size_t p = pos;
  while (true) {
    const Entry& e = entry(state, p);
    const State& s = t_.states_[static_cast<std::size_t>(state)];
    if (e.choice < 0) {
      const Accept& acc = s.accepts[static_cast<std::size_t>(-1 - e.choice)];
      for (int a : acc.actions) m.actions.push_back({t_.actions_[static_cast<std::size_t>(a)], p});
      m.rule = acc.rule;
      m.end = p;
      return m;
    }
    const Transition& tr = s.transitions[static_cast<std::size_t>(e.choice)];
    Unit u = view_.units(t_.predicates_[static_cast<std::size_t>(tr.predicate)], p)[static_cast<std::size_t>(e.unit)];
    if (first) m.begin = u.begin;
    first = false;
    for (int a : tr.actions) {
      const EmitAction& act = t_.actions_[static_cast<std::size_t>(a)];
      m.actions.push_back({act, act.open ? u.begin : p});
    }
    state = tr.target;
    p = u.end;
  }
}

bool Transducer::search(const MatchView& view) const {
  Matcher matcher(*this, view);
  for (std::size_t p = view.begin(); p < view.end(); ++p)
    if (view.can_start(p) && matcher.match(p)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// JSON form

namespace {

using nlohmann::json;

const char* kind_name(PatternNode::Kind k) {
  switch (k) {
    case PatternNode::Kind::kLiteral: return "literal";
    case PatternNode::Kind::kCategory: return "category";
    case PatternNode::Kind::kTagSpan: return "tag";
    case PatternNode::Kind::kAnyWord: return "any";
    case PatternNode::Kind::kUppercase: return "upper";
    default: return "?";
  }
}

PatternNode::Kind kind_from(const std::string& s) {
  if (s == "literal") return PatternNode::Kind::kLiteral;
  if (s == "category") return PatternNode::Kind::kCategory;
  if (s == "tag") return PatternNode::Kind::kTagSpan;
  if (s == "any") return PatternNode::Kind::kAnyWord;
  if (s == "upper") return PatternNode::Kind::kUppercase;
  throw Error("transducer", "unknown predicate kind '" + s + "'");
}

Family family_from(const std::string& s) {
  auto f = parse_family(s);
  if (!f) throw Error("transducer", "unknown family '" + s + "'");
  return *f;
}

}  // namespace

namespace {

json body_to_json(const Transducer& t);

json options_to_json(const GrammarOptions& o) {
  return {{"events", o.events_transparent ? "transparent" : "blocking"},
          {"scope", o.turn_scope ? "turn" : "segment"},
          {"tags", o.opaque_tags ? "opaque" : "transparent"},
          {"max_repeat", o.max_repeat}};
}

json body_to_json(const Transducer& t) {
  json j;
  j["options"] = options_to_json(t.options());
  j["rules"] = json::array();
  for (std::size_t r = 0; r < t.rule_names().size(); ++r) {
    json rule = {{"name", t.rule_names()[r]}};
    if (const Transducer* g = t.guard(static_cast<int>(r))) rule["guard"] = body_to_json(*g);
    j["rules"].push_back(rule);
  }
  j["predicates"] = json::array();
  for (const auto& p : t.predicates()) {
    json pj = {{"kind", kind_name(p.kind)}};
    if (p.kind == PatternNode::Kind::kLiteral) {
      pj["text"] = p.text;
      pj["case_sensitive"] = p.case_sensitive;
    } else if (p.kind == PatternNode::Kind::kCategory) {
      pj["category"] = p.category_name;
    } else if (p.kind == PatternNode::Kind::kTagSpan) {
      pj["family"] = family_name(p.family);
      pj["pattern"] = p.text;
    }
    j["predicates"].push_back(pj);
  }
  j["actions"] = json::array();
  for (const auto& a : t.actions())
    j["actions"].push_back({{"open", a.open}, {"family", family_name(a.family)}, {"type", a.type}});
  j["states"] = json::array();
  for (const auto& s : t.states()) {
    json sj = {{"transitions", json::array()}, {"accepts", json::array()}};
    for (const auto& tr : s.transitions)
      sj["transitions"].push_back({{"predicate", tr.predicate}, {"actions", tr.actions}, {"target", tr.target}});
    for (const auto& acc : s.accepts) sj["accepts"].push_back({{"rule", acc.rule}, {"actions", acc.actions}});
    j["states"].push_back(sj);
  }
  return j;
}

}  // namespace

std::string Transducer::to_json() const {
  json j = body_to_json(*this);
  j["format"] = "eslo-transducer";
  j["version"] = 1;
  j["lexicon"] = lexicon_->dump();
  j["categories"] = lexicon_->category_names();
  return j.dump(1);
}

namespace {

// Rebuilds one transducer body; the fields go through `assign` because they
// are private.
template <typename Assign>
void body_from_json(const json& j, const Lexicon& lexicon, Assign&& assign) {
  GrammarOptions options;
  for (auto key : {"events", "scope", "tags"}) set_grammar_option(options, key, j.at("options").at(key).template get<std::string>());
  set_grammar_option(options, "max_repeat", j.at("options").at("max_repeat").dump());
  std::vector<Predicate> predicates;
  for (const auto& pj : j.at("predicates")) {
    Predicate p;
    p.kind = kind_from(pj.at("kind").get<std::string>());
    if (p.kind == PatternNode::Kind::kLiteral) {
      p.text = pj.at("text").get<std::string>();
      p.case_sensitive = pj.at("case_sensitive").get<bool>();
    } else if (p.kind == PatternNode::Kind::kCategory) {
      p.category_name = pj.at("category").get<std::string>();
      p.category = lexicon.find(p.category_name);
      if (!p.category) throw Error("transducer", "unknown lexicon category '" + p.category_name + "'");
    } else if (p.kind == PatternNode::Kind::kTagSpan) {
      p.family = family_from(pj.at("family").get<std::string>());
      p.text = pj.at("pattern").get<std::string>();
    }
    predicates.push_back(std::move(p));
  }
  std::vector<EmitAction> actions;
  for (const auto& aj : j.at("actions"))
    actions.push_back({aj.at("open").get<bool>(), family_from(aj.at("family").get<std::string>()),
                       aj.at("type").get<std::string>()});
  std::vector<Transducer::State> states;
  for (const auto& sj : j.at("states")) {
    Transducer::State s;
    for (const auto& tj : sj.at("transitions")) {
      Transducer::Transition tr{tj.at("predicate").get<int>(), tj.at("actions").get<std::vector<int>>(),
                                tj.at("target").get<int>()};
      if (tr.predicate < 0 || static_cast<std::size_t>(tr.predicate) >= predicates.size() || tr.target < 0 ||
          static_cast<std::size_t>(tr.target) >= j.at("states").size())
        throw Error("transducer", "transition index out of range");
      for (int a : tr.actions)
        if (a < 0 || static_cast<std::size_t>(a) >= actions.size()) throw Error("transducer", "action out of range");
      s.transitions.push_back(std::move(tr));
    }
    for (const auto& aj : sj.at("accepts")) {
      Transducer::Accept acc{aj.at("rule").get<int>(), aj.at("actions").get<std::vector<int>>()};
      if (acc.rule < 0 || static_cast<std::size_t>(acc.rule) >= j.at("rules").size())
        throw Error("transducer", "rule index out of range");
      for (int a : acc.actions)
        if (a < 0 || static_cast<std::size_t>(a) >= actions.size()) throw Error("transducer", "action out of range");
      s.accepts.push_back(std::move(acc));
    }
    states.push_back(std::move(s));
  }
  if (states.empty()) throw Error("transducer", "no states");
  assign(options, std::move(predicates), std::move(actions), std::move(states));
}

}  // namespace

Transducer Transducer::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error("transducer", std::string("malformed JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != "eslo-transducer" || j.value("version", 0) != 1)
      throw Error("transducer", "not an eslo transducer (format/version)");
    auto lexicon = std::make_shared<Lexicon>(parse_lexicon(j.at("lexicon").get<std::string>(), "<transducer>"));
    for (const auto& c : j.at("categories")) lexicon->declare(c.get<std::string>());
    std::shared_ptr<const Lexicon> shared = lexicon;

    auto build = [&](auto&& self, const json& body) -> Transducer {
      Transducer t;
      t.lexicon_ = shared;
      body_from_json(body, *shared, [&](GrammarOptions o, std::vector<Predicate> p, std::vector<EmitAction> a,
                                        std::vector<State> s) {
        t.options_ = o;
        t.predicates_ = std::move(p);
        t.actions_ = std::move(a);
        t.states_ = std::move(s);
      });
      for (const auto& rule : body.at("rules")) {
        t.rule_names_.push_back(rule.at("name").get<std::string>());
        if (rule.contains("guard")) {
          t.guard_of_rule_.push_back(static_cast<int>(t.guards_.size()));
          t.guards_.push_back(self(self, rule.at("guard")));
        } else {
          t.guard_of_rule_.push_back(-1);
        }
      }
      return t;
    };
    return build(build, j);
  } catch (const json::exception& e) {
    throw Error("transducer", std::string("malformed transducer: ") + e.what());
  }
}

}  // namespace eslo
