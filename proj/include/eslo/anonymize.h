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

// Pseudonymization of annotated spans.
//
// Each targeted span (outermost only) is replaced by LABEL-n, where LABEL
// follows the top-level type (pers -> PERSON, loc -> LOCATION, ...) and n
// counts distinct (family, type, surface) keys per label within the
// document. Markup elements inside a replaced span stay, right after the
// placeholder. A replaced annotation and those inside it leave the document and
// travel in the mapping, whose entries restore the original exactly.

#ifndef ESLO_ANONYMIZE_H_
#define ESLO_ANONYMIZE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eslo/cascade.h"
#include "eslo/typology.h"

namespace eslo {

struct AnonymizationPolicy {
  struct Target {
    std::optional<Family> family;  // unset: either family
    std::string pattern;           // "*", "loc.*" or an exact type
  };
  std::vector<Target> targets;

  bool empty() const { return targets.empty(); }
  bool matches(const Annotation& a) const;
};

// Entries are separated by whitespace, commas or newlines; '#' starts a
// comment. An entry is a type pattern, optionally prefixed by "NE:" or
// "DE:". Throws Error("policy") for patterns no registry accepts.
AnonymizationPolicy parse_policy(std::string_view text, const TypologyRegistry& registry);

// One replaced occurrence, in document order.
struct MappingEntry {
  std::string placeholder;
  std::string surface;  // words of the span joined by spaces
  Family family = Family::kNE;
  std::string type;
  std::size_t turn = 0;
  std::string xml;  // original content of the span, inner annotations inline
  friend bool operator==(const MappingEntry&, const MappingEntry&) = default;
};

struct Pseudonymized {
  Document document;  // inline_spans hold the annotations left in place
  std::vector<MappingEntry> mapping;
};

// `ne_element` names the NE tag of the output and of the mapping fragments.
Pseudonymized pseudonymize(const AnnotatedDocument& doc, const AnonymizationPolicy& policy,
                           const std::string& ne_element = "NE");

std::string write_mapping(const std::vector<MappingEntry>& mapping);
// Throws ParseError("mapping") with the line number.
std::vector<MappingEntry> read_mapping(std::string_view jsonl);

// Puts the mapped content back in place of each placeholder. Throws
// Error("mapping") when a placeholder cannot be found where expected.
Document restore(Document doc, const std::vector<MappingEntry>& mapping);

std::string placeholder_label(std::string_view type);

}  // namespace eslo

#endif  // ESLO_ANONYMIZE_H_
