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

// Transcriber (.trs) documents: parsing, transcription-convention checks,
// Sync-delimited segmentation, tokenization and canonical serialization.

#ifndef ESLO_TRANSCRIPT_H_
#define ESLO_TRANSCRIPT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eslo/xml.h"

namespace eslo {

// Seconds as written in the file, plus the value in milliseconds.
struct TimeStamp {
  std::string text;
  std::int64_t millis = 0;
  bool valid = true;

  static TimeStamp parse(std::string_view text);
  friend bool operator==(const TimeStamp& a, const TimeStamp& b) { return a.text == b.text; }
};

struct SyncMark {
  TimeStamp time;
  xml::Attributes extra;
  friend bool operator==(const SyncMark&, const SyncMark&) = default;
};

struct EventMark {
  std::string description;
  std::string kind;
  std::string extent;
  xml::Attributes extra;
  friend bool operator==(const EventMark&, const EventMark&) = default;
};

struct TextRun {
  std::string text;
  friend bool operator==(const TextRun&, const TextRun&) = default;
};

// Who, Comment, Background, unknown elements and XML comments, kept verbatim.
struct OtherElement {
  xml::Node node;
  std::string name() const;
  friend bool operator==(const OtherElement& a, const OtherElement& b);
};

using TurnItem = std::variant<SyncMark, EventMark, TextRun, OtherElement>;

struct Turn {
  std::string speaker;
  TimeStamp start;
  TimeStamp end;
  xml::Attributes attributes;  // all attributes in source order
  std::vector<TurnItem> items;

  // Concatenation of the TextRun items.
  std::string text() const;
  friend bool operator==(const Turn&, const Turn&) = default;
};

struct SpeakerInfo {
  std::string id;
  std::string name;
  friend bool operator==(const SpeakerInfo&, const SpeakerInfo&) = default;
};

// Position inside a turn: item index and byte offset in that item. An
// element item has two positions, 0 (before) and 1 (after).
struct ItemPosition {
  std::size_t item = 0;
  std::size_t offset = 0;
  friend auto operator<=>(const ItemPosition&, const ItemPosition&) = default;
};

// An inline annotation element (<NE>, <EN>, <DE>) read from the input.
// Spans are kept at character level; the cascade layer maps them to tokens.
struct InlineSpan {
  std::string element;
  std::string type;
  std::size_t turn = 0;
  ItemPosition open;
  ItemPosition close;
  friend bool operator==(const InlineSpan&, const InlineSpan&) = default;
};

bool is_annotation_element(std::string_view name);

struct Document {
  std::string source;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<SpeakerInfo> speakers;
  std::vector<Turn> turns;
  std::vector<std::string> warnings;
  // Inline annotations in document order (outer before inner).
  std::vector<InlineSpan> inline_spans;
  // Full XML tree; each Turn element is replaced by a slot naming its index.
  xml::Tree skeleton;

  // Same turns, speakers and metadata.
  bool same_content(const Document& other) const;
};

enum class TokenKind {
  kWord,
  kTruncatedWord,
  kQuestionMark,
  kExclamationMark,
  kOtherPunctuation,  // only produced by text that breaks the conventions
  kEvent,             // Event, Who and unknown inline elements
  kSync,
  kTagOpen,
  kTagClose,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kWord;
  std::size_t turn = 0;
  // Byte span within Turn::text(); empty for element tokens.
  std::size_t begin = 0;
  std::size_t end = 0;
  // Turn item holding the token and the byte offset inside that item.
  std::size_t item = 0;
  std::size_t item_offset = 0;

  bool is_wordlike() const {
    return kind == TokenKind::kWord || kind == TokenKind::kTruncatedWord || kind == TokenKind::kQuestionMark ||
           kind == TokenKind::kExclamationMark || kind == TokenKind::kOtherPunctuation;
  }
};

// A maximal run of turn content between two Sync marks.
struct Segment {
  struct Piece {
    std::size_t item = 0;
    std::size_t text_offset = 0;  // offset of the piece in Turn::text()
    std::string text;             // empty for element pieces
    bool is_element = false;
    std::string element_name;
  };

  std::size_t turn = 0;
  std::size_t begin = 0;  // byte span within Turn::text()
  std::size_t end = 0;
  std::vector<Piece> pieces;
};

struct ConventionViolation {
  std::string rule;  // forbidden-punctuation, unexpected-uppercase, malformed-pause, malformed-truncation
  std::size_t turn = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string message;

  friend bool operator==(const ConventionViolation&, const ConventionViolation&) = default;
};

Document parse_transcription(std::string_view xml_bytes, std::string source = {});

std::vector<ConventionViolation> validate_conventions(const Document& doc);

std::vector<Segment> segment(const Document& doc);

// Tokens of a plain string, spans relative to the string.
std::vector<Token> tokenize(std::string_view text);
std::vector<Token> tokenize(const Segment& segment);
// Every token of a turn, Sync and element tokens included.
std::vector<Token> tokenize_turn(const Document& doc, std::size_t turn);

std::string serialize(const Document& doc);

// XML of one turn item (escaped text, or the element).
std::string serialize_item(const TurnItem& item);

// Serializes `doc` with `spans` in place of doc.inline_spans. Each span is
// written as <element type="...">; spans must be listed outer before inner.
// Throws when a span does not lie within its turn.
std::string serialize_with_spans(const Document& doc, const std::vector<InlineSpan>& spans);

}  // namespace eslo

#endif  // ESLO_TRANSCRIPT_H_
