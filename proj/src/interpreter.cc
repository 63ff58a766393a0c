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

#include "eslo/interpreter.h"

#include <algorithm>
#include <functional>
#include <limits>

namespace eslo {

namespace {

using Continuation = std::function<void(std::size_t)>;

class Interpreter {
 public:
  Interpreter(const MatchView& view, const Lexicon& lexicon, int max_repeat)
      : view_(view), lexicon_(lexicon), max_repeat_(max_repeat) {}

  std::vector<RuleMatch> run(const PatternNode& pattern, std::size_t pos) {
    walk(pattern, pos, [&](std::size_t end) {
      RuleMatch m;
      m.begin = first_ == kNone ? pos : first_;
      m.end = end;
      m.actions = placed_;
      for (const auto& a : pending_) m.actions.push_back({a, end});
      results_.push_back(std::move(m));
    });
    std::stable_sort(results_.begin(), results_.end(),
                     [](const RuleMatch& a, const RuleMatch& b) { return a.end > b.end; });
    return std::move(results_);
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Consumes one unit: pending actions are placed (opens at the unit start,
  // closes at the end of the previous unit), then the match continues.
  void consume(std::size_t pos, const Unit& u, const Continuation& k) {
    auto saved_pending = pending_;
    std::size_t saved_placed = placed_.size();
    std::size_t saved_first = first_;
    for (const auto& a : pending_) placed_.push_back({a, a.open ? u.begin : pos});
    pending_.clear();
    if (first_ == kNone) first_ = u.begin;
    k(u.end);
    placed_.resize(saved_placed);
    pending_ = std::move(saved_pending);
    first_ = saved_first;
  }

  void walk(const PatternNode& n, std::size_t pos, const Continuation& k) {
    using K = PatternNode::Kind;
    switch (n.kind) {
      case K::kLiteral:
      case K::kCategory:
      case K::kTagSpan:
      case K::kAnyWord:
      case K::kUppercase: {
        Predicate p = Predicate::from_node(n, lexicon_);
        for (const Unit& u : view_.units(p, pos)) consume(pos, u, k);
        return;
      }
      case K::kSequence:
        walk_sequence(n, 0, pos, k);
        return;
      case K::kAlternation:
        for (const auto& c : n.children) walk(c, pos, k);
        return;
      case K::kOptional:
        walk(n.children[0], pos, k);
        k(pos);
        return;
      case K::kRepeat: {
        int max = n.max == kUnbounded ? max_repeat_ : n.max;
        walk_repeat(n, 0, max, pos, k);
        return;
      }
      case K::kEmit: {
        pending_.push_back({true, n.family, n.text});
        walk(n.children[0], pos, [&](std::size_t q) {
          pending_.push_back({false, n.family, n.text});
          k(q);
          pending_.pop_back();
        });
        pending_.pop_back();
        return;
      }
    }
  }

  void walk_sequence(const PatternNode& n, std::size_t i, std::size_t pos, const Continuation& k) {
    if (i == n.children.size()) {
      k(pos);
      return;
    }
    walk(n.children[i], pos, [&](std::size_t q) { walk_sequence(n, i + 1, q, k); });
  }

  void walk_repeat(const PatternNode& n, int count, int max, std::size_t pos, const Continuation& k) {
    if (count < max) walk(n.children[0], pos, [&](std::size_t q) { walk_repeat(n, count + 1, max, q, k); });
    if (count >= n.min) k(pos);
  }

  const MatchView& view_;
  const Lexicon& lexicon_;
  int max_repeat_;
  std::vector<EmitAction> pending_;
  std::vector<PlacedAction> placed_;
  std::size_t first_ = kNone;
  std::vector<RuleMatch> results_;
};

}  // namespace

std::vector<RuleMatch> interpret(const PatternNode& pattern, const MatchView& view, std::size_t pos,
                                 const Lexicon& lexicon, int max_repeat) {
  if (pos < view.begin() || pos >= view.end()) return {};
  return Interpreter(view, lexicon, max_repeat).run(pattern, pos);
}

}  // namespace eslo
