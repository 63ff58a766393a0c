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

#include "eslo/typology.h"

#include <cctype>

#include "eslo/error.h"

namespace eslo {

std::string_view family_name(Family family) { return family == Family::kNE ? "NE" : "DE"; }

std::optional<Family> parse_family(std::string_view name) {
  if (name == "NE" || name == "EN") return Family::kNE;
  if (name == "DE") return Family::kDE;
  return std::nullopt;
}

namespace {

bool valid_type_syntax(std::string_view type) {
  if (type.empty() || type.front() == '.' || type.back() == '.') return false;
  char prev = 0;
  for (char c : type) {
    if (c == '.' && prev == '.') return false;
    if (c != '.' && !std::islower(static_cast<unsigned char>(c)) && !std::isdigit(static_cast<unsigned char>(c)) &&
        c != '_')
      return false;
    prev = c;
  }
  return true;
}

}  // namespace

void Typology::extend(std::string_view type) {
  if (!valid_type_syntax(type)) throw Error("typology", "malformed type '" + std::string(type) + "'");
  auto dot = type.rfind('.');
  if (dot != std::string_view::npos && !accepts(type.substr(0, dot)))
    throw Error("typology", "type '" + std::string(type) + "' has no registered parent");
  types_.insert(std::string(type));
}

bool Typology::valid_pattern(std::string_view pattern) const {
  if (pattern == "*") return true;
  if (pattern.size() > 2 && pattern.substr(pattern.size() - 2) == ".*")
    return accepts(pattern.substr(0, pattern.size() - 2));
  return accepts(pattern);
}

bool Typology::pattern_matches(std::string_view pattern, std::string_view type) {
  if (pattern == "*") return true;
  if (pattern.size() > 2 && pattern.substr(pattern.size() - 2) == ".*") {
    auto base = pattern.substr(0, pattern.size() - 2);
    return type == base || (type.size() > base.size() && type.substr(0, base.size()) == base && type[base.size()] == '.');
  }
  return pattern == type;
}

Typology ne_typology() {
  Typology t(Family::kNE);
  for (auto top : {"pers", "fonc", "org", "loc", "prod", "time", "amount", "event"}) t.extend(top);
  for (auto sub : {"pers.hum", "fonc.pol", "loc.fac", "loc.admi", "time.date", "time.date.rel"}) t.extend(sub);
  return t;
}

Typology de_typology() {
  Typology t(Family::kDE);
  for (auto top : {"pers", "identity", "work"}) t.extend(top);
  for (auto sub : {"pers.speaker", "pers.spouse", "pers.child", "pers.parent", "identity.age", "identity.birth",
                   "identity.origin", "identity.arrival", "identity.children", "work.occupation", "work.field",
                   "work.location", "work.business"})
    t.extend(sub);
  return t;
}

bool is_person_role(Family family, std::string_view type) {
  return family == Family::kDE && Typology::pattern_matches("pers.*", type);
}

bool nesting_allowed(Family outer_family, std::string_view outer_type, Family inner_family,
                     std::string_view inner_type) {
  if (outer_family == Family::kNE) return inner_family == Family::kNE;
  if (is_person_role(outer_family, outer_type)) return true;
  return !is_person_role(inner_family, inner_type);
}

}  // namespace eslo
