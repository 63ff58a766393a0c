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

// Small XML tree model covering what Transcriber files use: elements,
// attributes, character data, comments, processing instructions and a
// DOCTYPE line. Namespaces and DTD validation are not supported.

#ifndef ESLO_XML_H_
#define ESLO_XML_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eslo/error.h"

namespace eslo::xml {

using Attribute = std::pair<std::string, std::string>;
using Attributes = std::vector<Attribute>;

struct Node;

struct Element {
  std::string name;
  Attributes attributes;
  std::vector<Node> children;

  const std::string* attribute(std::string_view key) const;
  void set_attribute(std::string_view key, std::string value);
};

// A node of the tree. Slot nodes are opaque references owned by a higher
// layer (the transcript model uses them to stand in for Turn elements).
struct Node {
  enum class Kind { kElement, kText, kComment, kProcessingInstruction, kDoctype, kSlot };

  Kind kind = Kind::kText;
  Element element;       // kElement
  std::string text;      // kText, kComment, kProcessingInstruction, kDoctype
  std::size_t slot = 0;  // kSlot

  static Node make_text(std::string text);
  static Node make_element(Element element);
  static Node make_slot(std::size_t index);
};

struct Tree {
  std::vector<Node> prolog;  // declaration excluded; comments, PIs, doctype
  Element root;
};

// Parses UTF-8 bytes. A non UTF-8 encoding declared in the XML declaration
// is transcoded first. Errors carry 1-based line and column.
Tree parse(std::string_view bytes);

std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view text);

// Canonical form: UTF-8 declaration, attributes in stored order, double
// quotes, childless elements self-closed, minimal escaping.
void write_element(const Element& element, std::string& out);
// Any node but a slot; throws Error("xml") for slots.
void write_node(const Node& node, std::string& out);
void write_start_tag(const Element& element, std::string& out);
void write_end_tag(const Element& element, std::string& out);
std::string write(const Tree& tree);

}  // namespace eslo::xml

#endif  // ESLO_XML_H_
