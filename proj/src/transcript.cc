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

#include "eslo/transcript.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <tuple>

#include "eslo/error.h"
#include "eslo/text.h"

namespace eslo {

namespace {

constexpr std::array<std::string_view, 13> kKnownElements = {
    "Trans", "Speakers", "Speaker", "Topics", "Topic", "Episode", "Section",
    "Turn",  "Sync",     "Event",   "Who",    "Comment", "Background"};

bool is_known_element(std::string_view name) {
  return std::find(kKnownElements.begin(), kKnownElements.end(), name) != kKnownElements.end();
}

std::string write_node_string(const xml::Node& node) {
  std::string out;
  xml::write_node(node, out);
  return out;
}

}  // namespace

TimeStamp TimeStamp::parse(std::string_view text) {
  TimeStamp t;
  t.text = std::string(text);
  std::size_t i = 0;
  std::int64_t whole = 0;
  bool digits = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    whole = whole * 10 + (text[i] - '0');
    digits = true;
    ++i;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool round_up = false;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (frac_digits < 3) {
        frac = frac * 10 + (text[i] - '0');
      } else if (frac_digits == 3) {
        round_up = text[i] >= '5';
      }
      ++frac_digits;
      digits = true;
      ++i;
    }
  }
  for (int k = std::min(frac_digits, 3); k < 3; ++k) frac *= 10;
  t.valid = digits && i == text.size() && whole < 1'000'000'000;
  t.millis = whole * 1000 + frac + (round_up ? 1 : 0);
  return t;
}

std::string OtherElement::name() const {
  if (node.kind == xml::Node::Kind::kElement) return node.element.name;
  if (node.kind == xml::Node::Kind::kComment) return "#comment";
  return "#other";
}

bool operator==(const OtherElement& a, const OtherElement& b) {
  return write_node_string(a.node) == write_node_string(b.node);
}

std::string Turn::text() const {
  std::string out;
  for (const auto& item : items)
    if (const auto* run = std::get_if<TextRun>(&item)) out += run->text;
  return out;
}

bool Document::same_content(const Document& other) const {
  return metadata == other.metadata && speakers == other.speakers && turns == other.turns &&
         inline_spans == other.inline_spans;
}

bool is_annotation_element(std::string_view name) { return name == "NE" || name == "EN" || name == "DE"; }

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kTruncatedWord: return "truncated-word";
    case TokenKind::kQuestionMark: return "question-mark";
    case TokenKind::kExclamationMark: return "exclamation-mark";
    case TokenKind::kOtherPunctuation: return "punctuation";
    case TokenKind::kEvent: return "event";
    case TokenKind::kSync: return "sync";
    case TokenKind::kTagOpen: return "tag-open";
    case TokenKind::kTagClose: return "tag-close";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TranscriptionReader {
 public:
  explicit TranscriptionReader(Document& doc) : doc_(doc) {}

  void read(xml::Tree tree) {
    if (tree.root.name != "Trans") throw Error("transcript", "root element is <" + tree.root.name + ">, expected <Trans>");
    normalize_text(tree.root);
    for (auto& [k, v] : tree.root.attributes) doc_.metadata.emplace_back(k, v);
    doc_.skeleton.prolog = std::move(tree.prolog);
    doc_.skeleton.root = std::move(tree.root);
    visit(doc_.skeleton.root);
  }

 private:
  static void normalize_text(xml::Element& element) {
    for (auto& [k, v] : element.attributes) v = text::nfc(v);
    for (auto& child : element.children) {
      if (child.kind == xml::Node::Kind::kText) {
        child.text = text::nfc(child.text);
      } else if (child.kind == xml::Node::Kind::kElement) {
        normalize_text(child.element);
      }
    }
  }

  void warn_unknown(const std::string& name) {
    std::string message = "unknown element <" + name + "> preserved verbatim";
    if (std::find(doc_.warnings.begin(), doc_.warnings.end(), message) == doc_.warnings.end())
      doc_.warnings.push_back(std::move(message));
  }

  void visit(xml::Element& element) {
    if (element.name == "Speaker") {
      SpeakerInfo info;
      if (const auto* id = element.attribute("id")) info.id = *id;
      if (const auto* name = element.attribute("name")) info.name = *name;
      doc_.speakers.push_back(std::move(info));
    } else if (element.name == "Episode") {
      for (const auto& [k, v] : element.attributes) doc_.metadata.emplace_back("episode." + k, v);
    } else if (!is_known_element(element.name) && element.name != "Trans") {
      warn_unknown(element.name);
    }
    for (auto& child : element.children) {
      if (child.kind != xml::Node::Kind::kElement) continue;
      if (child.element.name == "Turn") {
        std::size_t index = doc_.turns.size();
        doc_.turns.push_back(read_turn(child.element, index));
        child = xml::Node::make_slot(index);
      } else {
        visit(child.element);
      }
    }
  }

  Turn read_turn(const xml::Element& element, std::size_t index) {
    Turn turn;
    turn.attributes = element.attributes;
    if (const auto* s = element.attribute("speaker")) turn.speaker = *s;
    const auto* start = element.attribute("startTime");
    const auto* end = element.attribute("endTime");
    if (!start || !end) throw Error("transcript", "turn " + std::to_string(index) + " lacks startTime or endTime");
    turn.start = TimeStamp::parse(*start);
    turn.end = TimeStamp::parse(*end);
    if (!turn.start.valid || !turn.end.valid)
      throw Error("transcript", "turn " + std::to_string(index) + " has a malformed time");
    if (turn.start.millis > turn.end.millis)
      throw Error("transcript", "turn " + std::to_string(index) + " ends before it starts");
    if (!doc_.turns.empty() && doc_.turns.back().start.millis > turn.start.millis)
      throw Error("transcript", "turn " + std::to_string(index) + " starts before the previous turn");

    pending_.clear();
    read_content(element, turn, index);
    flush(turn);
    return turn;
  }

  ItemPosition position(const Turn& turn) const { return {turn.items.size(), pending_.size()}; }

  void flush(Turn& turn) {
    if (!pending_.empty()) {
      turn.items.push_back(TextRun{std::move(pending_)});
      pending_.clear();
    }
  }

  void read_content(const xml::Element& element, Turn& turn, std::size_t index) {
    for (const auto& child : element.children) {
      switch (child.kind) {
        case xml::Node::Kind::kText:
          pending_ += child.text;
          break;
        case xml::Node::Kind::kElement: {
          const auto& e = child.element;
          if (is_annotation_element(e.name)) {
            std::size_t slot = doc_.inline_spans.size();
            InlineSpan span;
            span.element = e.name;
            if (const auto* type = e.attribute("type")) span.type = *type;
            span.turn = index;
            span.open = position(turn);
            doc_.inline_spans.push_back(span);
            read_content(e, turn, index);
            doc_.inline_spans[slot].close = position(turn);
            break;
          }
          flush(turn);
          if (e.name == "Sync") {
            SyncMark sync;
            for (const auto& [k, v] : e.attributes) {
              if (k == "time") {
                sync.time = TimeStamp::parse(v);
              } else {
                sync.extra.emplace_back(k, v);
              }
            }
            if (!e.attribute("time")) sync.time.valid = false;
            turn.items.push_back(std::move(sync));
          } else if (e.name == "Event") {
            EventMark event;
            for (const auto& [k, v] : e.attributes) {
              if (k == "desc") {
                event.description = v;
              } else if (k == "type") {
                event.kind = v;
              } else if (k == "extent") {
                event.extent = v;
              } else {
                event.extra.emplace_back(k, v);
              }
            }
            turn.items.push_back(std::move(event));
          } else {
            if (!is_known_element(e.name)) warn_unknown(e.name);
            turn.items.push_back(OtherElement{child});
          }
          break;
        }
        default:
          flush(turn);
          turn.items.push_back(OtherElement{child});
          break;
      }
    }
  }

  Document& doc_;
  std::string pending_;
};

}  // namespace

Document parse_transcription(std::string_view xml_bytes, std::string source) {
  Document doc;
  doc.source = std::move(source);
  TranscriptionReader(doc).read(xml::parse(xml_bytes));
  return doc;
}

// ---------------------------------------------------------------------------
// Tokenization

namespace {

bool is_dash(std::uint32_t cp) { return cp == '-'; }

bool keeps_apostrophe(std::string_view word_so_far) {
  std::string folded = text::fold(word_so_far);
  return folded == "aujourd" || folded == "prud" || folded == "presqu";
}

void push_token(std::vector<Token>& out, std::string_view s, std::size_t begin, std::size_t end, TokenKind kind) {
  Token t;
  t.surface = std::string(s.substr(begin, end - begin));
  t.kind = kind;
  t.begin = begin;
  t.end = end;
  t.item_offset = begin;
  out.push_back(std::move(t));
}

void tokenize_chunk(std::string_view s, std::size_t begin, std::size_t end, std::vector<Token>& out) {
  std::size_t i = begin;
  while (i < end) {
    std::size_t at = i;
    std::uint32_t cp = text::next_code_point(s, i);
    if (cp == '?') {
      push_token(out, s, at, i, TokenKind::kQuestionMark);
      continue;
    }
    if (cp == '!') {
      push_token(out, s, at, i, TokenKind::kExclamationMark);
      continue;
    }
    if (is_dash(cp)) {
      while (i < end && s[i] == '-') ++i;
      push_token(out, s, at, i, TokenKind::kOtherPunctuation);
      continue;
    }
    if (text::is_punctuation(cp)) {
      push_token(out, s, at, i, TokenKind::kOtherPunctuation);
      continue;
    }
    // Word: letters, digits, inner dashes and apostrophes.
    std::size_t j = at;
    std::size_t word_end = at;
    while (j < end) {
      std::size_t here = j;
      std::uint32_t c = text::next_code_point(s, j);
      if (c == '?' || c == '!') break;
      if (text::is_apostrophe(c)) {
        word_end = j;
        if (j < end) {
          std::size_t peek = j;
          std::uint32_t next = text::next_code_point(s, peek);
          if (text::is_letter(next) && !keeps_apostrophe(s.substr(at, here - at))) break;
          if (!text::is_letter(next)) break;
        }
        continue;
      }
      if (text::is_punctuation(c) && !is_dash(c)) {
        j = here;
        break;
      }
      word_end = j;
    }
    std::string_view surface = s.substr(at, word_end - at);
    TokenKind kind = !surface.empty() && surface.back() == '-' ? TokenKind::kTruncatedWord : TokenKind::kWord;
    push_token(out, s, at, word_end, kind);
    i = word_end;
  }
}

void shift(std::vector<Token>& tokens, std::size_t from, std::size_t text_offset, std::size_t item,
           std::size_t turn) {
  for (std::size_t k = from; k < tokens.size(); ++k) {
    tokens[k].item = item;
    tokens[k].turn = turn;
    tokens[k].item_offset = tokens[k].begin;
    tokens[k].begin += text_offset;
    tokens[k].end += text_offset;
  }
}

Token element_token(std::size_t turn, std::size_t item, std::size_t text_offset, TokenKind kind,
                    std::string surface) {
  Token t;
  t.surface = std::move(surface);
  t.kind = kind;
  t.turn = turn;
  t.begin = t.end = text_offset;
  t.item = item;
  t.item_offset = 0;
  return t;
}

std::string element_surface(const TurnItem& item) {
  if (std::holds_alternative<SyncMark>(item)) return "Sync";
  if (std::holds_alternative<EventMark>(item)) return "Event";
  return std::get<OtherElement>(item).name();
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t at = i;
    std::uint32_t cp = text::next_code_point(s, i);
    if (text::is_space(cp)) continue;
    std::size_t end = i;
    while (end < s.size()) {
      std::size_t probe = end;
      if (text::is_space(text::next_code_point(s, probe))) break;
      end = probe;
    }
    tokenize_chunk(s, at, end, out);
    i = end;
  }
  return out;
}

std::vector<Token> tokenize(const Segment& seg) {
  std::vector<Token> out;
  for (const auto& piece : seg.pieces) {
    if (piece.is_element) {
      out.push_back(element_token(seg.turn, piece.item, piece.text_offset, TokenKind::kEvent, piece.element_name));
      continue;
    }
    std::size_t from = out.size();
    auto local = tokenize(piece.text);
    out.insert(out.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    shift(out, from, piece.text_offset, piece.item, seg.turn);
  }
  return out;
}

std::vector<Token> tokenize_turn(const Document& doc, std::size_t turn_index) {
  const Turn& turn = doc.turns.at(turn_index);
  std::vector<Token> out;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < turn.items.size(); ++k) {
    const auto& item = turn.items[k];
    if (const auto* run = std::get_if<TextRun>(&item)) {
      std::size_t from = out.size();
      auto local = tokenize(run->text);
      out.insert(out.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
      shift(out, from, offset, k, turn_index);
      offset += run->text.size();
    } else {
      TokenKind kind = std::holds_alternative<SyncMark>(item) ? TokenKind::kSync : TokenKind::kEvent;
      out.push_back(element_token(turn_index, k, offset, kind, element_surface(item)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Segmentation

std::vector<Segment> segment(const Document& doc) {
  std::vector<Segment> out;
  for (std::size_t t = 0; t < doc.turns.size(); ++t) {
    const Turn& turn = doc.turns[t];
    Segment current;
    current.turn = t;
    bool has_text = false;
    auto close = [&] {
      if (has_text) {
        const auto& first = current.pieces.front();
        const auto& last = current.pieces.back();
        current.begin = first.text_offset;
        current.end = last.text_offset + last.text.size();
        out.push_back(std::move(current));
      }
      current = Segment{};
      current.turn = t;
      has_text = false;
    };
    std::size_t offset = 0;
    for (std::size_t k = 0; k < turn.items.size(); ++k) {
      const auto& item = turn.items[k];
      if (std::holds_alternative<SyncMark>(item)) {
        close();
        continue;
      }
      Segment::Piece piece;
      piece.item = k;
      piece.text_offset = offset;
      if (const auto* run = std::get_if<TextRun>(&item)) {
        piece.text = run->text;
        offset += run->text.size();
        if (run->text.find_first_not_of(" \t\r\n") != std::string::npos) has_text = true;
      } else {
        piece.is_element = true;
        piece.element_name = element_surface(item);
      }
      current.pieces.push_back(std::move(piece));
    }
    close();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Convention checks

std::vector<ConventionViolation> validate_conventions(const Document& doc) {
  std::vector<ConventionViolation> out;
  for (std::size_t t = 0; t < doc.turns.size(); ++t) {
    const Turn& turn = doc.turns[t];
    for (const Token& tok : tokenize_turn(doc, t)) {
      if (tok.kind == TokenKind::kOtherPunctuation) {
        if (tok.surface.find_first_not_of('-') == std::string::npos) {
          out.push_back({"malformed-truncation", t, tok.begin, tok.end, "dash not attached to a truncated word"});
        } else {
          out.push_back({"forbidden-punctuation", t, tok.begin, tok.end,
                         "punctuation '" + tok.surface + "' is not allowed"});
        }
        continue;
      }
      if (tok.kind != TokenKind::kWord && tok.kind != TokenKind::kTruncatedWord) continue;
      if (tok.kind == TokenKind::kTruncatedWord) {
        auto last = tok.surface.find_last_not_of('-');
        if (last == std::string::npos || tok.surface.size() - last - 1 > 1)
          out.push_back({"malformed-truncation", t, tok.begin, tok.end, "truncation must end with a single dash"});
      }
      if (tok.surface.find("--") != std::string::npos && tok.kind == TokenKind::kWord)
        out.push_back({"malformed-truncation", t, tok.begin, tok.end, "double dash inside a word"});
      // A capitalised word is an entity cue; a capital after a lowercase start is not.
      if (!text::starts_upper(tok.surface)) {
        std::size_t i = 0;
        while (i < tok.surface.size()) {
          std::size_t at = i;
          std::uint32_t cp = text::next_code_point(tok.surface, i);
          if (text::is_upper(cp)) {
            out.push_back({"unexpected-uppercase", t, tok.begin + at, tok.begin + i,
                           "uppercase letter inside '" + tok.surface + "'"});
            break;
          }
        }
      }
    }

    std::size_t offset = 0;
    std::int64_t previous = turn.start.millis;
    for (const auto& item : turn.items) {
      if (const auto* run = std::get_if<TextRun>(&item)) {
        offset += run->text.size();
        continue;
      }
      const auto* sync = std::get_if<SyncMark>(&item);
      if (!sync) continue;
      if (!sync->time.valid) {
        out.push_back({"malformed-pause", t, offset, offset, "Sync time '" + sync->time.text + "' is not a number"});
        continue;
      }
      if (sync->time.millis < turn.start.millis || sync->time.millis > turn.end.millis) {
        out.push_back({"malformed-pause", t, offset, offset, "Sync time " + sync->time.text + " lies outside the turn"});
      } else if (sync->time.millis < previous) {
        out.push_back({"malformed-pause", t, offset, offset, "Sync time " + sync->time.text + " goes backwards"});
      }
      previous = std::max(previous, sync->time.millis);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.turn, a.begin) < std::tie(b.turn, b.begin);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void write_item(const TurnItem& item, std::string& out) {
  if (const auto* run = std::get_if<TextRun>(&item)) {
    out += xml::escape_text(run->text);
  } else if (const auto* sync = std::get_if<SyncMark>(&item)) {
    xml::Element e{"Sync", {{"time", sync->time.text}}, {}};
    e.attributes.insert(e.attributes.end(), sync->extra.begin(), sync->extra.end());
    xml::write_element(e, out);
  } else if (const auto* event = std::get_if<EventMark>(&item)) {
    xml::Element e{"Event", {{"desc", event->description}, {"type", event->kind}, {"extent", event->extent}}, {}};
    e.attributes.insert(e.attributes.end(), event->extra.begin(), event->extra.end());
    xml::write_element(e, out);
  } else {
    out += write_node_string(std::get<OtherElement>(item).node);
  }
}

struct Marker {
  ItemPosition pos;
  int kind;  // 0 = close, 1 = open
  long order;
  std::size_t span;
};

void write_turn(const Turn& turn, std::size_t turn_index, const std::vector<const InlineSpan*>& spans,
                std::string& out) {
  xml::Element start{"Turn", turn.attributes, {}};
  if (turn.items.empty() && spans.empty()) {
    xml::write_element(start, out);
    return;
  }
  auto item_size = [&](std::size_t k) -> std::size_t {
    if (k >= turn.items.size()) return 0;
    if (const auto* run = std::get_if<TextRun>(&turn.items[k])) return run->text.size();
    return 1;
  };
  std::vector<Marker> markers;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const InlineSpan& s = *spans[i];
    auto in_turn = [&](ItemPosition p) {
      return p.item < turn.items.size() ? p.offset <= item_size(p.item) : (p.item == turn.items.size() && p.offset == 0);
    };
    if (!in_turn(s.open) || !in_turn(s.close) || s.close < s.open)
      throw Error("serialize", "annotation " + s.type + " crosses the boundary of turn " + std::to_string(turn_index));
    markers.push_back({s.open, 1, static_cast<long>(i), i});
    markers.push_back({s.close, 0, -static_cast<long>(i), i});
  }
  std::sort(markers.begin(), markers.end(), [](const Marker& a, const Marker& b) {
    return std::tie(a.pos, a.kind, a.order) < std::tie(b.pos, b.kind, b.order);
  });

  std::vector<std::size_t> stack;
  std::size_t next = 0;
  auto emit_until = [&](ItemPosition limit, bool inclusive) {
    while (next < markers.size() && (markers[next].pos < limit || (inclusive && markers[next].pos == limit))) {
      const Marker& m = markers[next++];
      const InlineSpan& s = *spans[m.span];
      xml::Element tag{s.element, {{"type", s.type}}, {}};
      if (m.kind == 1) {
        xml::write_start_tag(tag, out);
        stack.push_back(m.span);
      } else {
        if (stack.empty() || stack.back() != m.span)
          throw Error("serialize", "crossing annotations in turn " + std::to_string(turn_index));
        stack.pop_back();
        xml::write_end_tag(tag, out);
      }
    }
  };

  xml::write_start_tag(start, out);
  for (std::size_t k = 0; k < turn.items.size(); ++k) {
    const auto& item = turn.items[k];
    if (const auto* run = std::get_if<TextRun>(&item)) {
      std::size_t cursor = 0;
      while (cursor < run->text.size()) {
        emit_until({k, cursor}, true);
        std::size_t stop = run->text.size();
        if (next < markers.size() && markers[next].pos.item == k) stop = std::min(stop, markers[next].pos.offset);
        if (stop <= cursor) stop = cursor + 1;
        out += xml::escape_text(std::string_view(run->text).substr(cursor, stop - cursor));
        cursor = stop;
      }
      emit_until({k, run->text.size()}, true);
    } else {
      emit_until({k, 0}, true);
      write_item(item, out);
      emit_until({k, 1}, true);
    }
  }
  emit_until({turn.items.size(), 0}, true);
  if (!stack.empty()) throw Error("serialize", "unclosed annotation in turn " + std::to_string(turn_index));
  xml::write_end_tag(start, out);
}

void write_tree_node(const xml::Node& node, const Document& doc,
                     const std::vector<std::vector<const InlineSpan*>>& by_turn, std::string& out);

void write_tree_element(const xml::Element& element, const Document& doc,
                        const std::vector<std::vector<const InlineSpan*>>& by_turn, std::string& out) {
  if (element.children.empty()) {
    xml::write_element(element, out);
    return;
  }
  xml::write_start_tag(element, out);
  for (const auto& child : element.children) write_tree_node(child, doc, by_turn, out);
  xml::write_end_tag(element, out);
}

void write_tree_node(const xml::Node& node, const Document& doc,
                     const std::vector<std::vector<const InlineSpan*>>& by_turn, std::string& out) {
  switch (node.kind) {
    case xml::Node::Kind::kSlot:
      write_turn(doc.turns.at(node.slot), node.slot, by_turn[node.slot], out);
      break;
    case xml::Node::Kind::kElement:
      write_tree_element(node.element, doc, by_turn, out);
      break;
    default:
      out += write_node_string(node);
      break;
  }
}

}  // namespace

std::string serialize_with_spans(const Document& doc, const std::vector<InlineSpan>& spans) {
  std::vector<std::vector<const InlineSpan*>> by_turn(doc.turns.size());
  for (const auto& s : spans) {
    if (s.turn >= doc.turns.size())
      throw Error("serialize", "annotation " + s.type + " refers to missing turn " + std::to_string(s.turn));
    by_turn[s.turn].push_back(&s);
  }
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  for (const auto& node : doc.skeleton.prolog) {
    write_tree_node(node, doc, by_turn, out);
    out += '\n';
  }
  write_tree_element(doc.skeleton.root, doc, by_turn, out);
  out += '\n';
  return out;
}

std::string serialize(const Document& doc) { return serialize_with_spans(doc, doc.inline_spans); }

std::string serialize_item(const TurnItem& item) {
  std::string out;
  write_item(item, out);
  return out;
}

}  // namespace eslo
