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

// Annotated documents on disk: inline <NE>/<EN>/<DE> elements inside Turn
// text, or standoff JSON lines {family, type, turn, start, end} where start
// and end are token indices of the turn (end exclusive).

#ifndef ESLO_ANNOTATED_IO_H_
#define ESLO_ANNOTATED_IO_H_

#include <string>
#include <string_view>

#include "eslo/cascade.h"
#include "eslo/typology.h"

namespace eslo {

// Converts the inline spans of `doc` to token annotations (layer 0). A
// span boundary falling inside a token is snapped inward with a warning;
// spans covering no token are dropped with a warning. When `registry` is
// given, unknown types throw Error("annotation").
AnnotatedDocument from_document(Document doc, const TypologyRegistry* registry = nullptr);

AnnotatedDocument read_annotated(std::string_view xml_bytes, std::string source = {},
                                 const TypologyRegistry* registry = nullptr);

// Canonical XML with annotations written inline; `ne_element` names the NE
// tag ("NE" or "EN"). Throws Error("serialize") for crossing annotations.
std::string write_inline(const AnnotatedDocument& doc, const std::string& ne_element = "NE");

// Character-level positions of doc.annotations, index-aligned with it.
std::vector<InlineSpan> inline_spans_of(const AnnotatedDocument& doc, const std::string& ne_element = "NE");

std::string write_standoff(const AnnotatedDocument& doc);

// Replaces the annotations of `doc` with those read from `jsonl`. Throws
// ParseError("standoff") with the line number on malformed input.
AnnotatedDocument read_standoff(std::string_view jsonl, AnnotatedDocument doc,
                                const TypologyRegistry* registry = nullptr);

// Token text of an annotation, words joined by single spaces.
std::string surface_of(const AnnotatedDocument& doc, const Annotation& a);

}  // namespace eslo

#endif  // ESLO_ANNOTATED_IO_H_
