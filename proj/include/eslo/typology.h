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

// Type registries for named entities (NE) and designating entities (DE).
// Types are dotted paths; every registered type has a registered parent.

#ifndef ESLO_TYPOLOGY_H_
#define ESLO_TYPOLOGY_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace eslo {

enum class Family { kNE, kDE };

std::string_view family_name(Family family);
// "NE" and "EN" both read as kNE.
std::optional<Family> parse_family(std::string_view name);

class Typology {
 public:
  explicit Typology(Family family) : family_(family) {}

  Family family() const { return family_; }
  bool accepts(std::string_view type) const { return types_.count(std::string(type)) > 0; }
  const std::set<std::string>& types() const { return types_; }

  // Registers `type`; its parent must already be registered unless it is a
  // top-level type. Throws Error("typology") otherwise.
  void extend(std::string_view type);

  // Patterns: "*" (any), "loc.*" (loc and its descendants) or an exact type.
  bool valid_pattern(std::string_view pattern) const;
  static bool pattern_matches(std::string_view pattern, std::string_view type);

 private:
  Family family_;
  std::set<std::string> types_;
};

// pers, fonc, org, loc, prod, time, amount, event and the attested
// subtypes pers.hum, fonc.pol, loc.fac, loc.admi, time.date.rel.
Typology ne_typology();

// Person roles pers.{speaker,spouse,child,parent} and the attributes
// identity.{age,birth,origin,arrival,children} and
// work.{occupation,field,location,business}.
Typology de_typology();

struct TypologyRegistry {
  Typology ne = ne_typology();
  Typology de = de_typology();

  const Typology& of(Family family) const { return family == Family::kNE ? ne : de; }
  Typology& of(Family family) { return family == Family::kNE ? ne : de; }
};

bool is_person_role(Family family, std::string_view type);

// Containment rule between annotation types: person roles may hold
// anything; DE attributes may hold NE tags and attributes but never person
// roles; NE tags never hold DE tags.
bool nesting_allowed(Family outer_family, std::string_view outer_type, Family inner_family,
                     std::string_view inner_type);

}  // namespace eslo

#endif  // ESLO_TYPOLOGY_H_
