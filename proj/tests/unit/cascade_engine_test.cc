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

#include <memory>

#include "doctest.h"
#include "eslo/annotated_io.h"
#include "eslo/cascade.h"
#include "eslo/error.h"
#include "eslo/packs.h"
#include "eslo/transducer.h"
#include "oracles.h"

namespace eslo {
namespace {

using testing::transcript_xml;

Pass make_pass(const std::string& name, const std::string& grammar_text, const Lexicon& lex = {}) {
  TypologyRegistry registry;
  return Pass{name, std::make_shared<const Transducer>(compile(parse_grammar(grammar_text, registry, &lex),
                                                               std::make_shared<const Lexicon>(lex)))};
}

AnnotatedDocument run(const Pass& pass, const std::string& xml) { return apply_pass(pass, read_annotated(xml)); }

std::vector<std::string> spans(const AnnotatedDocument& doc) {
  std::vector<std::string> out;
  for (const auto& a : doc.annotations)
    out.push_back(a.type + "@" + std::to_string(a.turn) + ":" + std::to_string(a.begin) + "-" + std::to_string(a.end));
  return out;
}

}  // namespace

TEST_SUITE("cascade_engine") {

TEST_CASE("leftmost longest match, resuming after it") {
  auto doc = run(make_pass("p", "r := {NE:loc \"a\" \"b\"?} ;"), transcript_xml({"a b a a"}));
  CHECK(spans(doc) == std::vector<std::string>{"loc@0:0-2", "loc@0:2-3", "loc@0:3-4"});
}

TEST_CASE("earlier rules win ties") {
  auto doc = run(make_pass("p", "one := {NE:loc \"a\"} ;\ntwo := {NE:org \"a\"} ;"), transcript_xml({"a"}));
  REQUIRE(doc.annotations.size() == 1);
  CHECK(doc.annotations[0].type == "loc");
  CHECK(doc.annotations[0].rule == "one");
}

TEST_CASE("matches stop at Sync marks unless the grammar asks for turn scope") {
  const std::string xml = transcript_xml({"neuf <Sync time=\"1\"/> ans"});
  CHECK(run(make_pass("p", "r := {NE:time \"neuf\" \"ans\"} ;"), xml).annotations.empty());
  auto doc = run(make_pass("p", "%option scope = turn\nr := {NE:time \"neuf\" \"ans\"} ;"), xml);
  CHECK(spans(doc) == std::vector<std::string>{"time@0:0-3"});
}

TEST_CASE("events inside a match are skipped and included") {
  const std::string xml =
      transcript_xml({"habitez <Event desc=\"pi\" type=\"pronounce\" extent=\"instantaneous\"/> Orléans"});
  auto doc = run(make_pass("p", "r := {NE:loc \"habitez\" \"Orléans\"} ;"), xml);
  CHECK(spans(doc) == std::vector<std::string>{"loc@0:0-3"});
  CHECK(run(make_pass("p", "%option events = blocking\nr := {NE:loc \"habitez\" \"Orléans\"} ;"), xml)
            .annotations.empty());
}

TEST_CASE("a guard looks at the previous turn only") {
  Pass pass = make_pass("p", "r [prev: \"longtemps\"] := {NE:time \"neuf\" \"ans\"} ;");
  auto doc = run(pass, transcript_xml({"neuf ans", "ça fait longtemps", "neuf ans", "euh", "neuf ans"}));
  CHECK(spans(doc) == std::vector<std::string>{"time@2:0-2"});
}

TEST_CASE("later passes see earlier annotations and wrap them") {
  Pass ne = make_pass("ne", "city := {NE:loc.admi \"Pithiviers\"} ;");
  Pass de = make_pass("de", "origin := {DE:identity.origin \"de\" <NE:loc.*>} ;");
  auto doc = apply_pass(de, apply_pass(ne, read_annotated(transcript_xml({"native de Pithiviers"}))));
  REQUIRE(doc.annotations.size() == 2);
  CHECK(doc.annotations[0].type == "identity.origin");
  CHECK(doc.annotations[1].type == "loc.admi");
  CHECK(doc.annotations[1].depth == 1);
  CHECK(doc.provenance == std::vector<std::string>{"ne", "de"});
  CHECK(check_nesting(doc).empty());
}

TEST_CASE("a pass leaves earlier annotations untouched") {
  const std::string xml = transcript_xml({"<NE type=\"loc\">a b</NE> c", "a"});
  AnnotatedDocument before = read_annotated(xml);
  AnnotatedDocument after = apply_pass(make_pass("p", "r := {NE:org \"c\"} ;"), before);
  for (const auto& a : before.annotations) {
    bool kept = false;
    for (const auto& b : after.annotations) kept = kept || (same_annotation(a, b) && b.layer == a.layer);
    CHECK(kept);
  }
  CHECK(after.annotations.size() == before.annotations.size() + 1);
}

TEST_CASE("annotating annotated text changes nothing") {
  TypologyRegistry registry;
  Cascade c = load_cascade({"ne", "de"}, registry);
  for (const auto& name : testing::fixture_names()) {
    AnnotatedDocument once = run_cascade(c, read_annotated(testing::read_file(testing::fixture_path("corpus/" + name))));
    AnnotatedDocument twice = run_cascade(c, read_annotated(write_inline(once)));
    CAPTURE(name);
    CHECK(write_inline(twice) == write_inline(once));
  }
}

TEST_CASE("crossing an existing annotation is a pass error") {
  const std::string xml = transcript_xml({"<NE type=\"loc\">a b</NE> c"});
  Pass pass = make_pass("p", "%option tags = transparent\nr := {NE:org \"b\" \"c\"} ;");
  try {
    apply_pass(pass, read_annotated(xml));
    FAIL("expected a pass error");
  } catch (const PassError& e) {
    CHECK(e.pass() == "p");
    CHECK(e.rule() == "r");
  }
}

TEST_CASE("the empty cascade is the identity") {
  for (const auto& name : testing::fixture_names()) {
    for (const auto& dir : {"corpus/", "gold/"}) {
      const std::string xml = testing::read_file(testing::fixture_path(dir + name));
      AnnotatedDocument doc = read_annotated(xml);
      AnnotatedDocument out = run_cascade(Cascade{}, doc);
      CAPTURE(name);
      CHECK(write_inline(out) == write_inline(doc));
    }
  }
}

TEST_CASE("standoff output reads back to the same annotations") {
  const std::string xml = testing::read_file(testing::fixture_path("gold/native.trs"));
  AnnotatedDocument doc = read_annotated(xml);
  REQUIRE(doc.annotations.size() == 4);
  AnnotatedDocument back = read_standoff(write_standoff(doc), read_annotated(xml));
  CHECK(write_inline(back) == write_inline(doc));
  CHECK_THROWS_AS(read_standoff("{\"family\":\"NE\"}\n", doc), ParseError);
  CHECK_THROWS_AS(read_standoff("{\"family\":\"NE\",\"type\":\"loc\",\"turn\":0,\"start\":3,\"end\":99}\n", doc),
                  ParseError);
}

TEST_CASE("nesting and typology checks") {
  AnnotatedDocument doc = read_annotated(transcript_xml({"a b c d"}));
  Annotation x{Family::kNE, "loc", 0, 0, 2};
  Annotation y{Family::kNE, "org", 0, 1, 3};
  doc.annotations = {x, y};
  doc.normalize();
  CHECK(check_nesting(doc).size() == 1);

  TypologyRegistry registry;
  Annotation ne{Family::kNE, "loc", 0, 0, 4};
  Annotation de{Family::kDE, "pers.speaker", 0, 1, 2};
  doc.annotations = {ne, de};
  doc.normalize();
  CHECK(check_nesting(doc).empty());
  CHECK(check_typology(doc, registry).size() == 1);
}

TEST_CASE("tags split inside a token snap inward with a warning") {
  AnnotatedDocument doc = read_annotated(transcript_xml({"aujour<NE type=\"time\">dhui matin</NE>"}));
  REQUIRE(doc.annotations.size() == 1);
  CHECK(doc.annotations[0].begin == 1);
  CHECK_FALSE(doc.document.warnings.empty());
}

}  // TEST_SUITE

}  // namespace eslo
