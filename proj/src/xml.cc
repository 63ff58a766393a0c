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

#include "eslo/xml.h"

#include <unicode/ucnv.h>

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "eslo/text.h"

namespace eslo::xml {

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes)
    if (k == key) return &v;
  return nullptr;
}

void Element::set_attribute(std::string_view key, std::string value) {
  for (auto& [k, v] : attributes) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  attributes.emplace_back(std::string(key), std::move(value));
}

Node Node::make_text(std::string text) {
  Node n;
  n.kind = Kind::kText;
  n.text = std::move(text);
  return n;
}

Node Node::make_element(Element element) {
  Node n;
  n.kind = Kind::kElement;
  n.element = std::move(element);
  return n;
}

Node Node::make_slot(std::size_t index) {
  Node n;
  n.kind = Kind::kSlot;
  n.slot = index;
  return n;
}

namespace {

bool is_name_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == ':' || c >= 0x80; }
bool is_name_char(unsigned char c) {
  return is_name_start(c) || std::isdigit(c) || c == '-' || c == '.';
}
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::optional<std::string> declared_encoding(std::string_view bytes) {
  if (bytes.substr(0, 5) != "<?xml") return std::nullopt;
  auto end = bytes.find("?>");
  if (end == std::string_view::npos) return std::nullopt;
  auto decl = bytes.substr(0, end);
  auto pos = decl.find("encoding");
  if (pos == std::string_view::npos) return std::nullopt;
  pos = decl.find_first_of("\"'", pos);
  if (pos == std::string_view::npos) return std::nullopt;
  char quote = decl[pos];
  auto close = decl.find(quote, pos + 1);
  if (close == std::string_view::npos) return std::nullopt;
  return std::string(decl.substr(pos + 1, close - pos - 1));
}

std::string transcode_to_utf8(std::string_view bytes, const std::string& encoding) {
  UErrorCode status = U_ZERO_ERROR;
  std::string out(bytes.size() * 3 + 16, '\0');
  int32_t n = ucnv_convert("UTF-8", encoding.c_str(), out.data(), static_cast<int32_t>(out.size()),
                           bytes.data(), static_cast<int32_t>(bytes.size()), &status);
  if (U_FAILURE(status)) throw Error("xml", "cannot transcode from declared encoding " + encoding);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view input) : in_(input) {}

  Tree parse_document() {
    Tree tree;
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    bool have_root = false;
    while (true) {
      skip_space();
      if (at_end()) break;
      if (!looking_at("<")) fail("character data outside the root element");
      if (looking_at("<?xml") && (pos_ + 5 < in_.size()) && is_space(in_[pos_ + 5])) {
        if (have_root || !tree.prolog.empty()) fail("misplaced XML declaration");
        skip_until("?>");
        continue;
      }
      if (looking_at("<?")) {
        auto n = parse_pi();
        if (!have_root) tree.prolog.push_back(std::move(n));
        continue;
      }
      if (looking_at("<!--")) {
        auto n = parse_comment();
        if (!have_root) tree.prolog.push_back(std::move(n));
        continue;
      }
      if (looking_at("<!DOCTYPE")) {
        if (have_root) fail("DOCTYPE after the root element");
        tree.prolog.push_back(parse_doctype());
        continue;
      }
      if (have_root) fail("content after the root element");
      tree.root = parse_element();
      have_root = true;
    }
    if (!have_root) fail("no root element");
    return tree;
  }

 private:
  bool at_end() const { return pos_ >= in_.size(); }
  bool looking_at(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

  [[noreturn]] void fail(const std::string& message) const {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < in_.size(); ++i) {
      if (in_[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(in_[i]) & 0xC0) != 0x80) {
        ++column;
      }
    }
    throw ParseError("xml", message, line, column);
  }

  void skip_space() {
    while (!at_end() && is_space(in_[pos_])) ++pos_;
  }

  void expect(std::string_view s) {
    if (!looking_at(s)) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  std::string_view skip_until(std::string_view terminator) {
    auto end = in_.find(terminator, pos_);
    if (end == std::string_view::npos) fail("unterminated construct, missing '" + std::string(terminator) + "'");
    auto body = in_.substr(pos_, end - pos_);
    pos_ = end + terminator.size();
    return body;
  }

  std::string parse_name() {
    std::size_t start = pos_;
    if (at_end() || !is_name_start(static_cast<unsigned char>(in_[pos_]))) fail("expected a name");
    while (!at_end() && is_name_char(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    return std::string(in_.substr(start, pos_ - start));
  }

  Node parse_pi() {
    expect("<?");
    Node n;
    n.kind = Node::Kind::kProcessingInstruction;
    n.text = std::string(skip_until("?>"));
    return n;
  }

  Node parse_comment() {
    expect("<!--");
    Node n;
    n.kind = Node::Kind::kComment;
    n.text = std::string(skip_until("-->"));
    return n;
  }

  Node parse_doctype() {
    expect("<!DOCTYPE");
    std::size_t start = pos_;
    int depth = 0;
    char quote = 0;
    while (!at_end()) {
      char c = in_[pos_];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '[') {
        ++depth;
      } else if (c == ']') {
        --depth;
      } else if (c == '>' && depth == 0) {
        break;
      }
      ++pos_;
    }
    if (at_end()) fail("unterminated DOCTYPE");
    Node n;
    n.kind = Node::Kind::kDoctype;
    n.text = std::string(in_.substr(start, pos_ - start));
    ++pos_;
    // Keep the body without surrounding blanks so the canonical form is stable.
    auto first = n.text.find_first_not_of(" \t\r\n");
    auto last = n.text.find_last_not_of(" \t\r\n");
    n.text = first == std::string::npos ? std::string() : n.text.substr(first, last - first + 1);
    return n;
  }

  void append_reference(std::string& out) {
    std::size_t start = pos_;
    ++pos_;  // '&'
    auto end = in_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 16) {
      pos_ = start;
      fail("malformed entity reference");
    }
    auto name = in_.substr(pos_, end - pos_);
    pos_ = end + 1;
    if (name == "lt") {
      out += '<';
    } else if (name == "gt") {
      out += '>';
    } else if (name == "amp") {
      out += '&';
    } else if (name == "quot") {
      out += '"';
    } else if (name == "apos") {
      out += '\'';
    } else if (!name.empty() && name[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      auto digits = name.substr(hex ? 2 : 1);
      if (digits.empty()) {
        pos_ = start;
        fail("malformed character reference");
      }
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') {
          v = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          v = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          v = c - 'A' + 10;
        } else {
          pos_ = start;
          fail("malformed character reference");
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) {
          pos_ = start;
          fail("character reference out of range");
        }
      }
      text::append_utf8(out, cp);
    } else {
      pos_ = start;
      fail("unknown entity '" + std::string(name) + "'");
    }
  }

  std::string parse_attribute_value() {
    if (at_end() || (in_[pos_] != '"' && in_[pos_] != '\'')) fail("expected a quoted attribute value");
    char quote = in_[pos_++];
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated attribute value");
      char c = in_[pos_];
      if (c == quote) {
        ++pos_;
        break;
      }
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        append_reference(value);
      } else {
        value += c;
        ++pos_;
      }
    }
    return value;
  }

  Element parse_element() {
    expect("<");
    Element element;
    element.name = parse_name();
    while (true) {
      bool spaced = !at_end() && is_space(in_[pos_]);
      skip_space();
      if (at_end()) fail("unterminated start tag <" + element.name + ">");
      if (looking_at("/>")) {
        pos_ += 2;
        return element;
      }
      if (looking_at(">")) {
        ++pos_;
        break;
      }
      if (!spaced) fail("expected whitespace before attribute");
      std::string key = parse_name();
      skip_space();
      expect("=");
      skip_space();
      std::string value = parse_attribute_value();
      if (element.attribute(key)) fail("duplicate attribute '" + key + "'");
      element.attributes.emplace_back(std::move(key), std::move(value));
    }
    parse_content(element);
    return element;
  }

  void parse_content(Element& element) {
    std::string pending;
    auto flush = [&] {
      if (!pending.empty()) {
        element.children.push_back(Node::make_text(std::move(pending)));
        pending.clear();
      }
    };
    while (true) {
      if (at_end()) fail("missing end tag </" + element.name + ">");
      char c = in_[pos_];
      if (c == '&') {
        append_reference(pending);
        continue;
      }
      if (c != '<') {
        pending += c;
        ++pos_;
        continue;
      }
      if (looking_at("</")) {
        pos_ += 2;
        std::string name = parse_name();
        if (name != element.name) fail("end tag </" + name + "> does not match <" + element.name + ">");
        skip_space();
        expect(">");
        flush();
        return;
      }
      if (looking_at("<![CDATA[")) {
        pos_ += 9;
        pending += skip_until("]]>");
        continue;
      }
      if (looking_at("<!--")) {
        flush();
        element.children.push_back(parse_comment());
        continue;
      }
      if (looking_at("<?")) {
        flush();
        element.children.push_back(parse_pi());
        continue;
      }
      flush();
      element.children.push_back(Node::make_element(parse_element()));
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse(std::string_view bytes) {
  auto encoding = declared_encoding(bytes);
  if (encoding) {
    std::string lowered = *encoding;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered != "utf-8" && lowered != "utf8") {
      std::string converted = transcode_to_utf8(bytes, *encoding);
      return Parser(converted).parse_document();
    }
  }
  return Parser(bytes).parse_document();
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_attribute(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

void write_attributes(const Element& element, std::string& out) {
  for (const auto& [key, value] : element.attributes) {
    out += ' ';
    out += key;
    out += "=\"";
    out += escape_attribute(value);
    out += '"';
  }
}

}  // namespace

void write_start_tag(const Element& element, std::string& out) {
  out += '<';
  out += element.name;
  write_attributes(element, out);
  out += '>';
}

void write_end_tag(const Element& element, std::string& out) {
  out += "</";
  out += element.name;
  out += '>';
}

void write_element(const Element& element, std::string& out) {
  if (element.children.empty()) {
    out += '<';
    out += element.name;
    write_attributes(element, out);
    out += "/>";
    return;
  }
  write_start_tag(element, out);
  for (const auto& child : element.children) write_node(child, out);
  write_end_tag(element, out);
}

std::string write(const Tree& tree) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  for (const auto& node : tree.prolog) {
    write_node(node, out);
    out += '\n';
  }
  write_element(tree.root, out);
  out += '\n';
  return out;
}

void write_node(const Node& node, std::string& out) {
  switch (node.kind) {
    case Node::Kind::kElement: write_element(node.element, out); break;
    case Node::Kind::kText: out += escape_text(node.text); break;
    case Node::Kind::kComment: out += "<!--" + node.text + "-->"; break;
    case Node::Kind::kProcessingInstruction: out += "<?" + node.text + "?>"; break;
    case Node::Kind::kDoctype: out += "<!DOCTYPE " + node.text + ">"; break;
    case Node::Kind::kSlot: throw Error("xml", "cannot write an unresolved slot node");
  }
}

}  // namespace eslo::xml
