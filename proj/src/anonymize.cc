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

#include "eslo/anonymize.h"

#include <algorithm>
#include <map>

#include "eslo/annotated_io.h"
#include "eslo/error.h"
#include "json.hpp"

namespace eslo {

bool AnonymizationPolicy::matches(const Annotation& a) const {
  for (const auto& t : targets)
    if ((!t.family || *t.family == a.family) && Typology::pattern_matches(t.pattern, a.type)) return true;
  return false;
}

AnonymizationPolicy parse_policy(std::string_view text, const TypologyRegistry& registry) {
  AnonymizationPolicy policy;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t i = 0;
    while (i < line.size()) {
      auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
      while (i < line.size() && is_sep(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !is_sep(line[i])) ++i;
      if (i == start) continue;
      std::string_view entry = line.substr(start, i - start);
      AnonymizationPolicy::Target target;
      if (auto colon = entry.find(':'); colon != std::string_view::npos) {
        target.family = parse_family(entry.substr(0, colon));
        if (!target.family) throw Error("policy", "unknown family in '" + std::string(entry) + "'");
        entry = entry.substr(colon + 1);
      }
      target.pattern = std::string(entry);
      bool known = target.family ? registry.of(*target.family).valid_pattern(entry)
                                 : registry.ne.valid_pattern(entry) || registry.de.valid_pattern(entry);
      if (!known) throw Error("policy", "unknown type '" + target.pattern + "'");
      policy.targets.push_back(std::move(target));
    }
  }
  return policy;
}

std::string placeholder_label(std::string_view type) {
  static const std::map<std::string, std::string, std::less<>> kLabels = {
      {"pers", "PERSON"}, {"loc", "LOCATION"},   {"org", "ORGANIZATION"}, {"fonc", "FUNCTION"},
      {"prod", "PRODUCT"}, {"time", "TIME"},     {"amount", "AMOUNT"},    {"event", "EVENT"},
      {"identity", "IDENTITY"}, {"work", "WORK"}};
  std::string_view top = type.substr(0, type.find('.'));
  if (auto it = kLabels.find(top); it != kLabels.end()) return it->second;
  std::string label;
  for (char c : top) label += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
  return label.empty() ? "ENTITY" : label;
}

namespace {

bool is_text(const TurnItem& item) { return std::holds_alternative<TextRun>(item); }

std::size_t item_end(const TurnItem& item) {
  if (const auto* run = std::get_if<TextRun>(&item)) return run->text.size();
  return 1;
}

// Replacement of the items between `from` and `to` by `replacement`. The
// text before `from` and after `to` in their items stays as separate runs.
class Splice {
 public:
  Splice(const std::vector<TurnItem>& items, ItemPosition from, ItemPosition to, std::vector<TurnItem> replacement)
      : from_(from), to_(to), from_text_(from.item < items.size() && is_text(items[from.item])),
        to_text_(to.item < items.size() && is_text(items[to.item])) {
    for (std::size_t k = 0; k < from.item; ++k) out_.push_back(items[k]);
    if (from_text_) out_.push_back(TextRun{std::get<TextRun>(items[from.item]).text.substr(0, from.offset)});
    r_begin_ = out_.size();
    for (auto& item : replacement) out_.push_back(std::move(item));
    r_end_ = out_.size();
    if (to_text_) out_.push_back(TextRun{std::get<TextRun>(items[to.item]).text.substr(to.offset)});
    after_ = out_.size();
    for (std::size_t k = to.item + 1; k < items.size(); ++k) out_.push_back(items[k]);
  }

  std::vector<TurnItem>& items() { return out_; }
  ItemPosition replacement_begin() const { return {r_begin_, 0}; }
  ItemPosition replacement_end() const { return {r_end_ - 1, item_end(out_[r_end_ - 1])}; }
  std::size_t replacement_offset() const { return r_begin_; }

  // Positions strictly between `from` and `to` have no image.
  std::optional<ItemPosition> map(ItemPosition p) const {
    if (p.item < from_.item) return p;
    if (p == from_ && !from_text_) return replacement_begin();
    if (from_text_ && p.item == from_.item && p.offset <= from_.offset) return p;
    if (p == to_ && !to_text_) return replacement_end();
    if (to_text_ && p.item == to_.item && p.offset >= to_.offset) return ItemPosition{r_end_, p.offset - to_.offset};
    if (p.item > to_.item) return ItemPosition{after_ + (p.item - to_.item - 1), p.offset};
    return std::nullopt;
  }

 private:
  ItemPosition from_;
  ItemPosition to_;
  bool from_text_;
  bool to_text_;
  std::vector<TurnItem> out_;
  std::size_t r_begin_ = 0;
  std::size_t r_end_ = 0;
  std::size_t after_ = 0;
};

constexpr std::string_view kFragmentTurn = "<Turn startTime=\"0\" endTime=\"0\">";

std::string fragment_xml(std::vector<TurnItem> items, std::vector<InlineSpan> spans) {
  Document shell = parse_transcription("<Trans><Turn startTime=\"0\" endTime=\"0\"/></Trans>");
  shell.turns[0].items = std::move(items);
  for (auto& s : spans) s.turn = 0;
  std::string xml = serialize_with_spans(shell, spans);
  auto begin = xml.find(kFragmentTurn);
  auto end = xml.rfind("</Turn>");
  if (begin == std::string::npos || end == std::string::npos) throw Error("anonymize", "cannot serialize a span");
  begin += kFragmentTurn.size();
  return xml.substr(begin, end - begin);
}

Document parse_fragment(const std::string& xml) {
  try {
    return parse_transcription("<Trans>" + std::string(kFragmentTurn) + xml + "</Turn></Trans>");
  } catch (const Error& e) {
    throw Error("mapping", std::string("malformed span content: ") + e.what());
  }
}

struct Target {
  std::size_t index;  // in doc.annotations
  std::string placeholder;
};

}  // namespace

Pseudonymized pseudonymize(const AnnotatedDocument& doc, const AnonymizationPolicy& policy,
                           const std::string& ne_element) {
  const auto& annotations = doc.annotations;
  std::vector<InlineSpan> spans = inline_spans_of(doc, ne_element);
  std::vector<char> inner(annotations.size(), 0);
  std::vector<std::vector<std::size_t>> members(annotations.size());  // inner annotations of each target
  std::vector<Target> targets;

  std::string all_text;
  for (const auto& turn : doc.document.turns) all_text += turn.text() + '\n';
  std::map<std::string, int> counters;
  std::map<std::tuple<Family, std::string, std::string>, std::string> assigned;

  // doc.annotations is in nesting order: containers precede their contents.
  for (std::size_t k = 0; k < annotations.size(); ++k) {
    if (inner[k] || !policy.matches(annotations[k])) continue;
    const Annotation& a = annotations[k];
    for (std::size_t j = k + 1; j < annotations.size() && annotations[j].turn == a.turn; ++j) {
      if (annotations[j].begin >= a.end) break;
      if (a.contains(annotations[j])) {
        inner[j] = 1;
        members[k].push_back(j);
      }
    }
    auto key = std::make_tuple(a.family, a.type, surface_of(doc, a));
    auto it = assigned.find(key);
    if (it == assigned.end()) {
      const std::string label = placeholder_label(a.type);
      std::string name;
      do name = label + "-" + std::to_string(++counters[label]);
      while (all_text.find(name) != std::string::npos);
      it = assigned.emplace(key, name).first;
    }
    targets.push_back({k, it->second});
  }

  Pseudonymized out;
  out.document = doc.document;
  out.document.inline_spans.clear();
  std::vector<char> replaced(annotations.size(), 0);
  for (const auto& t : targets) replaced[t.index] = 1;
  std::vector<InlineSpan> kept;
  for (std::size_t k = 0; k < annotations.size(); ++k)
    if (!inner[k] && !replaced[k]) kept.push_back(spans[k]);

  for (const auto& t : targets) {
    const Annotation& a = annotations[t.index];
    MappingEntry entry{t.placeholder, surface_of(doc, a), a.family, a.type, a.turn, {}};
    const auto& items = doc.document.turns[a.turn].items;
    ItemPosition from = spans[t.index].open;
    ItemPosition to = spans[t.index].close;
    std::vector<TurnItem> slice;
    for (std::size_t k = from.item; k <= to.item && k < items.size(); ++k) {
      if (const auto* run = std::get_if<TextRun>(&items[k])) {
        std::size_t b = k == from.item ? from.offset : 0;
        std::size_t e = k == to.item ? to.offset : run->text.size();
        slice.push_back(TextRun{run->text.substr(b, e - b)});
      } else {
        slice.push_back(items[k]);
      }
    }
    auto relative = [&](ItemPosition p) {
      return ItemPosition{p.item - from.item, p.item == from.item && is_text(items[from.item]) ? p.offset - from.offset
                                                                                               : p.offset};
    };
    std::vector<InlineSpan> inside;
    inside.push_back(spans[t.index]);
    for (std::size_t j : members[t.index]) inside.push_back(spans[j]);
    for (auto& s : inside) {
      s.open = relative(s.open);
      s.close = relative(s.close);
    }
    entry.xml = fragment_xml(std::move(slice), std::move(inside));
    out.mapping.push_back(std::move(entry));
  }

  // Splice right to left so that earlier positions stay valid.
  for (auto t = targets.rbegin(); t != targets.rend(); ++t) {
    const Annotation& a = annotations[t->index];
    auto& items = out.document.turns[a.turn].items;
    std::vector<TurnItem> replacement{TextRun{t->placeholder}};
    const ItemPosition from = spans[t->index].open;
    const ItemPosition to = spans[t->index].close;
    for (std::size_t k = from.item; k <= to.item && k < items.size(); ++k)
      if (!is_text(items[k])) replacement.push_back(items[k]);
    Splice splice(items, from, to, std::move(replacement));
    for (auto& s : kept) {
      if (s.turn != a.turn) continue;
      auto open = splice.map(s.open);
      auto close = splice.map(s.close);
      if (!open || !close) throw Error("anonymize", "annotation " + s.type + " crosses a replaced span");
      s.open = *open;
      s.close = *close;
    }
    items = std::move(splice.items());
  }
  out.document.inline_spans = std::move(kept);
  return out;
}

std::string write_mapping(const std::vector<MappingEntry>& mapping) {
  std::string out;
  for (const auto& m : mapping) {
    nlohmann::ordered_json j = {{"placeholder", m.placeholder}, {"surface", m.surface},
                                {"type", m.type},               {"family", family_name(m.family)},
                                {"turn", m.turn},               {"xml", m.xml}};
    out += j.dump() + '\n';
  }
  return out;
}

std::vector<MappingEntry> read_mapping(std::string_view jsonl) {
  std::vector<MappingEntry> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    auto nl = jsonl.find('\n', pos);
    std::string_view line = jsonl.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? jsonl.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      MappingEntry m;
      m.placeholder = j.at("placeholder").get<std::string>();
      m.surface = j.at("surface").get<std::string>();
      m.type = j.at("type").get<std::string>();
      auto family = parse_family(j.at("family").get<std::string>());
      if (!family) throw ParseError("mapping", "unknown family", line_no, 0);
      m.family = *family;
      m.turn = j.at("turn").get<std::size_t>();
      m.xml = j.at("xml").get<std::string>();
      if (m.placeholder.empty()) throw ParseError("mapping", "empty placeholder", line_no, 0);
      out.push_back(std::move(m));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("mapping", e.what(), line_no, 0);
    }
  }
  return out;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// First occurrence of `name` at or after `cursor`, not followed by a digit.
std::optional<ItemPosition> find_placeholder(const std::vector<TurnItem>& items, ItemPosition cursor,
                                             const std::string& name) {
  for (std::size_t k = cursor.item; k < items.size(); ++k) {
    const auto* run = std::get_if<TextRun>(&items[k]);
    if (!run) continue;
    std::size_t at = k == cursor.item ? cursor.offset : 0;
    while ((at = run->text.find(name, at)) != std::string::npos) {
      std::size_t after = at + name.size();
      if (after >= run->text.size() || !is_digit(run->text[after])) return ItemPosition{k, at};
      ++at;
    }
  }
  return std::nullopt;
}

}  // namespace

Document restore(Document doc, const std::vector<MappingEntry>& mapping) {
  std::size_t current_turn = SIZE_MAX;
  ItemPosition cursor;
  for (const auto& m : mapping) {
    if (m.turn >= doc.turns.size()) throw Error("mapping", m.placeholder + " refers to missing turn " + std::to_string(m.turn));
    if (m.turn != current_turn) {
      if (current_turn != SIZE_MAX && m.turn < current_turn) throw Error("mapping", "entries out of document order");
      current_turn = m.turn;
      cursor = {};
    }
    auto& items = doc.turns[m.turn].items;
    auto at = find_placeholder(items, cursor, m.placeholder);
    if (!at) throw Error("mapping", m.placeholder + " not found in turn " + std::to_string(m.turn));

    Document fragment = parse_fragment(m.xml);
    std::vector<TurnItem> replacement = std::move(fragment.turns[0].items);
    std::size_t elements = 0;
    for (const auto& item : replacement) elements += is_text(item) ? 0 : 1;
    ItemPosition from = *at;
    ItemPosition to{at->item, at->offset + m.placeholder.size()};
    if (elements > 0) {
      const auto& run = std::get<TextRun>(items[at->item]).text;
      if (to.offset != run.size() || at->item + elements >= items.size())
        throw Error("mapping", m.placeholder + ": markup inside the span has moved");
      std::size_t seen = 0;
      for (const auto& item : replacement) {
        if (is_text(item)) continue;
        if (!(items[at->item + 1 + seen] == item))
          throw Error("mapping", m.placeholder + ": markup inside the span has changed");
        ++seen;
      }
      to = {at->item + elements, 1};
    }

    // Fragment annotations go after every annotation opening at or before `from`.
    auto insert_at = std::find_if(doc.inline_spans.begin(), doc.inline_spans.end(), [&](const InlineSpan& s) {
      return s.turn > m.turn || (s.turn == m.turn && s.open > from);
    });
    std::size_t insert_index = static_cast<std::size_t>(insert_at - doc.inline_spans.begin());

    Splice splice(items, from, to, std::move(replacement));
    for (auto& s : doc.inline_spans) {
      if (s.turn != m.turn) continue;
      auto open = splice.map(s.open);
      auto close = splice.map(s.close);
      if (!open || !close) throw Error("mapping", "annotation " + s.type + " lies inside " + m.placeholder);
      s.open = *open;
      s.close = *close;
    }
    for (auto& s : fragment.inline_spans) {
      s.turn = m.turn;
      s.open.item += splice.replacement_offset();
      s.close.item += splice.replacement_offset();
    }
    doc.inline_spans.insert(doc.inline_spans.begin() + static_cast<std::ptrdiff_t>(insert_index),
                            fragment.inline_spans.begin(), fragment.inline_spans.end());
    ItemPosition end = splice.replacement_end();
    items = std::move(splice.items());
    cursor = {end.item + 1, 0};
  }
  return doc;
}

}  // namespace eslo
