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

#include "eslo/annotated_io.h"

#include <algorithm>

#include "eslo/error.h"
#include "json.hpp"

namespace eslo {

namespace {

bool is_element_token(const Token& t) { return t.kind == TokenKind::kEvent || t.kind == TokenKind::kSync; }

ItemPosition token_start(const Token& t) { return {t.item, is_element_token(t) ? 0 : t.item_offset}; }

ItemPosition token_end(const Token& t) {
  return {t.item, is_element_token(t) ? 1 : t.item_offset + (t.end - t.begin)};
}

void check_type(const TypologyRegistry* registry, Family family, const std::string& type) {
  if (registry && !registry->of(family).accepts(type))
    throw Error("annotation", "unknown " + std::string(family_name(family)) + " type '" + type + "'");
}

}  // namespace

AnnotatedDocument from_document(Document doc, const TypologyRegistry* registry) {
  std::vector<InlineSpan> spans = std::move(doc.inline_spans);
  doc.inline_spans.clear();
  AnnotatedDocument out = tokenized(std::move(doc));
  int rank = 0;
  for (const auto& span : spans) {
    auto family = parse_family(span.element);
    if (!family) throw Error("annotation", "unknown annotation element <" + span.element + ">");
    check_type(registry, *family, span.type);
    if (span.turn >= out.tokens.size()) throw Error("annotation", "annotation outside any turn");
    const auto& tokens = out.tokens[span.turn];
    std::size_t begin = tokens.size();
    std::size_t end = 0;
    bool snapped = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      ItemPosition s = token_start(tokens[i]);
      ItemPosition e = token_end(tokens[i]);
      if (s >= span.open && e <= span.close) {
        begin = std::min(begin, i);
        end = i + 1;
      } else if ((s < span.open && span.open < e) || (s < span.close && span.close < e)) {
        snapped = true;
      }
    }
    std::string where = out.document.source + ": turn " + std::to_string(span.turn) + ": " + span.element + " " +
                        span.type;
    if (snapped) out.document.warnings.push_back(where + ": tag boundary inside a token, snapped inward");
    if (begin >= end) {
      out.document.warnings.push_back(where + ": annotation covers no token, dropped");
      continue;
    }
    Annotation a;
    a.family = *family;
    a.type = span.type;
    a.turn = span.turn;
    a.begin = begin;
    a.end = end;
    a.layer = 0;
    a.rank = rank++;
    a.pass = "input";
    out.annotations.push_back(std::move(a));
  }
  out.normalize();
  return out;
}

AnnotatedDocument read_annotated(std::string_view xml_bytes, std::string source, const TypologyRegistry* registry) {
  return from_document(parse_transcription(xml_bytes, std::move(source)), registry);
}

std::vector<InlineSpan> inline_spans_of(const AnnotatedDocument& doc, const std::string& ne_element) {
  std::vector<InlineSpan> spans;
  spans.reserve(doc.annotations.size());
  for (const auto& a : doc.annotations) {
    if (a.turn >= doc.tokens.size() || a.begin >= a.end || a.end > doc.tokens[a.turn].size())
      throw Error("serialize", "annotation " + a.type + " lies outside turn " + std::to_string(a.turn));
    const auto& tokens = doc.tokens[a.turn];
    spans.push_back({a.family == Family::kNE ? ne_element : "DE", a.type, a.turn, token_start(tokens[a.begin]),
                     token_end(tokens[a.end - 1])});
  }
  return spans;
}

std::string write_inline(const AnnotatedDocument& doc, const std::string& ne_element) {
  auto spans = inline_spans_of(doc, ne_element);
  std::vector<std::size_t> order(spans.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return nesting_order(doc.annotations[x], doc.annotations[y]);
  });
  std::vector<InlineSpan> sorted;
  sorted.reserve(spans.size());
  for (std::size_t i : order) sorted.push_back(std::move(spans[i]));
  return serialize_with_spans(doc.document, sorted);
}

std::string write_standoff(const AnnotatedDocument& doc) {
  std::string out;
  for (const auto& a : doc.annotations) {
    nlohmann::ordered_json j = {{"family", family_name(a.family)},
                                {"type", a.type},
                                {"turn", a.turn},
                                {"start", a.begin},
                                {"end", a.end}};
    out += j.dump() + '\n';
  }
  return out;
}

AnnotatedDocument read_standoff(std::string_view jsonl, AnnotatedDocument doc, const TypologyRegistry* registry) {
  doc.annotations.clear();
  int line_no = 0;
  int rank = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    auto nl = jsonl.find('\n', pos);
    std::string_view line = jsonl.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? jsonl.size() : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      Annotation a;
      auto family = parse_family(j.at("family").get<std::string>());
      if (!family) throw Error("standoff", "unknown family");
      a.family = *family;
      a.type = j.at("type").get<std::string>();
      a.turn = j.at("turn").get<std::size_t>();
      a.begin = j.at("start").get<std::size_t>();
      a.end = j.at("end").get<std::size_t>();
      check_type(registry, a.family, a.type);
      if (a.turn >= doc.tokens.size() || a.begin >= a.end || a.end > doc.tokens[a.turn].size())
        throw Error("standoff", "span outside its turn");
      a.rank = rank++;
      a.pass = "input";
      doc.annotations.push_back(std::move(a));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("standoff", e.what(), line_no, 0);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("standoff", e.what(), line_no, 0);
    }
  }
  doc.normalize();
  return doc;
}

std::string surface_of(const AnnotatedDocument& doc, const Annotation& a) {
  std::string out;
  if (a.turn >= doc.tokens.size()) return out;
  const auto& tokens = doc.tokens[a.turn];
  for (std::size_t i = a.begin; i < a.end && i < tokens.size(); ++i) {
    if (!tokens[i].is_wordlike()) continue;
    if (!out.empty()) out += ' ';
    out += tokens[i].surface;
  }
  return out;
}

}  // namespace eslo
