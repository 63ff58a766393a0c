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

#include "doctest.h"
#include "eslo/annotated_io.h"
#include "eslo/anonymize.h"
#include "eslo/error.h"
#include "oracles.h"

namespace eslo {
namespace {

std::string gold(const std::string& name) { return testing::read_file(testing::fixture_path("gold/" + name)); }

std::string flat_text(const Document& doc) {
  std::string out;
  for (const auto& t : doc.turns) {
    for (const auto& tok : tokenize(t.text())) out += (out.empty() ? "" : " ") + tok.surface;
  }
  return out;
}

}  // namespace

TEST_SUITE("anonymize") {

TEST_CASE("labels follow the top-level type") {
  CHECK(placeholder_label("pers.hum") == "PERSON");
  CHECK(placeholder_label("loc.admi") == "LOCATION");
  CHECK(placeholder_label("fonc.pol") == "FUNCTION");
  CHECK(placeholder_label("identity.origin") == "IDENTITY");
}

TEST_CASE("policies") {
  TypologyRegistry r;
  AnonymizationPolicy p = parse_policy("loc.admi, NE:pers.*\n# comment\nDE:work.*", r);
  REQUIRE(p.targets.size() == 3);
  CHECK_FALSE(p.targets[0].family);
  CHECK(p.targets[1].family == Family::kNE);
  CHECK(p.matches(Annotation{Family::kDE, "work.field", 0, 0, 1}));
  CHECK_FALSE(p.matches(Annotation{Family::kNE, "work.field", 0, 0, 1}));
  CHECK(parse_policy("  # nothing\n", r).empty());
  try {
    parse_policy("loc.moon", r);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == "policy");
  }
}

TEST_CASE("the birthplace becomes a location placeholder") {
  TypologyRegistry r;
  Pseudonymized out = pseudonymize(read_annotated(gold("native.trs")), parse_policy("loc.admi", r), "EN");
  CHECK(flat_text(out.document) == "moi je suis native de LOCATION-1 j' aime mieux LOCATION-2");
  REQUIRE(out.mapping.size() == 2);
  CHECK(out.mapping[0].placeholder == "LOCATION-1");
  CHECK(out.mapping[0].surface == "Pithiviers");
  CHECK(out.mapping[1].surface == "Orléans");
  const std::string xml = serialize(out.document);
  CHECK(xml.find("<DE type=\"identity.origin\">") != std::string::npos);
  CHECK(xml.find("Pithiviers") == std::string::npos);
}

TEST_CASE("an empty policy changes nothing") {
  auto doc = read_annotated(gold("native.trs"));
  Pseudonymized out = pseudonymize(doc, AnonymizationPolicy{}, "EN");
  CHECK(out.mapping.empty());
  CHECK(serialize(out.document) == write_inline(doc, "EN"));
}

TEST_CASE("repeated surnames share a placeholder") {
  const std::string xml = testing::transcript_xml(
      {"<NE type=\"pers.hum\">Dupont</NE> et <NE type=\"pers.hum\">Martin</NE>", "encore <NE type=\"pers.hum\">Dupont</NE>"});
  TypologyRegistry r;
  Pseudonymized out = pseudonymize(read_annotated(xml), parse_policy("pers.*", r));
  REQUIRE(out.mapping.size() == 3);
  CHECK(out.mapping[0].placeholder == "PERSON-1");
  CHECK(out.mapping[1].placeholder == "PERSON-2");
  CHECK(out.mapping[2].placeholder == "PERSON-1");
  CHECK(flat_text(out.document) == "PERSON-1 et PERSON-2 encore PERSON-1");
}

TEST_CASE("the mapping restores the original document") {
  TypologyRegistry r;
  for (const auto& name : testing::fixture_names()) {
    auto doc = read_annotated(gold(name));
    for (const char* policy : {"*", "loc.*", "DE:pers.speaker", "NE:time.*, DE:work.*"}) {
      Pseudonymized out = pseudonymize(doc, parse_policy(policy, r));
      auto mapping = read_mapping(write_mapping(out.mapping));
      CHECK(mapping == out.mapping);
      Document back = restore(parse_transcription(serialize(out.document)), mapping);
      CAPTURE(name);
      CAPTURE(policy);
      CHECK(serialize(back) == write_inline(doc));
    }
  }
}

TEST_CASE("mapping errors") {
  CHECK_THROWS_AS(read_mapping("{\"placeholder\":1}\n"), ParseError);
  CHECK_THROWS_AS(read_mapping("not json\n"), ParseError);
  MappingEntry e{"PERSON-9", "Dupont", Family::kNE, "pers.hum", 0, "Dupont"};
  CHECK_THROWS_AS(restore(parse_transcription(testing::transcript_xml({"personne"})), {e}), Error);
}

}  // TEST_SUITE

}  // namespace eslo
