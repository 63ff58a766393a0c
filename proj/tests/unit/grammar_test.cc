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

#include <algorithm>
#include <memory>
#include <tuple>

#include "doctest.h"
#include "eslo/annotated_io.h"
#include "eslo/cascade.h"
#include "eslo/error.h"
#include "eslo/grammar.h"
#include "eslo/interpreter.h"
#include "eslo/transducer.h"
#include "oracles.h"

namespace eslo {
namespace {

Lexicon musician_lexicon() {
  Lexicon lex;
  lex.add("musicien", "Profession");
  lex.add("chanteuse", "Profession");
  lex.add("concert", "Profession");
  lex.add("Willy", "Firstname", true);
  lex.add("Johnny", "Firstname", true);
  return lex;
}

const char* kMusician = R"(musician := ("le"|"la") <Profession> "de"? {NE:pers.hum <Firstname> <AnyWord?> } ;)";

std::vector<Annotation> run_rules(const std::string& grammar_text, const Lexicon& lex, const std::string& xml) {
  TypologyRegistry registry;
  Pass pass{"p", std::make_shared<const Transducer>(
                     compile(parse_grammar(grammar_text, registry, &lex), std::make_shared<const Lexicon>(lex)))};
  return apply_pass(pass, tokenized(parse_transcription(xml))).annotations;
}

}  // namespace

TEST_SUITE("grammar") {

TEST_CASE("the musician rule parses into one rule") {
  TypologyRegistry registry;
  Lexicon lex = musician_lexicon();
  Grammar g = parse_grammar(kMusician, registry, &lex);
  REQUIRE(g.rules.size() == 1);
  CHECK(g.rules[0].name == "musician");
  CHECK(g.categories() == std::set<std::string>{"Firstname", "Profession"});
  CHECK(g.output_tags() == std::set<std::pair<Family, std::string>>{{Family::kNE, "pers.hum"}});
}

TEST_CASE("empty text is an empty grammar") {
  TypologyRegistry registry;
  CHECK(parse_grammar("", registry).rules.empty());
  CHECK(parse_grammar("# nothing\n", registry).rules.empty());
}

TEST_CASE("syntax errors carry line and column") {
  TypologyRegistry registry;
  Lexicon lex = musician_lexicon();
  auto expect_error = [&](const std::string& text, int line) {
    try {
      parse_grammar(text, registry, &lex);
      FAIL("expected an error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.kind() == "grammar");
      CHECK(e.line() == line);
      CHECK(e.column() > 0);
    }
  };
  expect_error("r := \"a\"", 1);                           // missing ';'
  expect_error("r := \"a\" ;\ns := {NE:pers.hum \"b\" ;", 2);  // unbalanced emit
  expect_error("r := <Nowhere> ;", 1);                     // unknown category
  expect_error("r := {NE:pers.alien \"a\"} ;", 1);         // unknown type
  expect_error("r := <NE:nope.*> ;", 1);                   // unknown pattern
  expect_error("r := \"a\" ;\nr := \"b\" ;", 2);           // duplicate rule
}

TEST_CASE("print then parse reproduces random grammars") {
  TypologyRegistry registry;
  testing::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Grammar g = parse_grammar(print_grammar(testing::random_grammar(rng)), registry);
    Grammar again = parse_grammar(print_grammar(g), registry);
    CAPTURE(print_grammar(g));
    CHECK(again == g);
    CHECK(again.options == g.options);
  }
}

TEST_CASE("a single literal compiles to two states") {
  TypologyRegistry registry;
  Transducer t = compile(parse_grammar("r := \"oui\" ;", registry), std::make_shared<const Lexicon>());
  CHECK(t.state_count() == 2);
  CHECK(t.transition_count() == 1);
}

TEST_CASE("repeat bounds above max_repeat do not compile") {
  TypologyRegistry registry;
  auto lex = std::make_shared<const Lexicon>();
  CHECK_THROWS_AS(compile(parse_grammar("r := \"a\"{1,20} ;", registry), lex), Error);
  CHECK_NOTHROW(compile(parse_grammar("%option max_repeat = 20\nr := \"a\"{1,20} ;", registry), lex));
  CHECK_NOTHROW(compile(parse_grammar("r := \"a\"+ ;", registry), lex));
}

TEST_CASE("the musician rule tags the artist after a concert") {
  auto as = run_rules(kMusician, musician_lexicon(),
                      testing::transcript_xml({"le concert de Johnny Hallyday", "le musicien Willy DeVille"}));
  REQUIRE(as.size() == 2);
  CHECK(as[0].type == "pers.hum");
  CHECK(as[0].turn == 0);
  CHECK(as[0].begin == 3);
  CHECK(as[0].end == 5);
  CHECK(as[1].turn == 1);
  CHECK(as[1].begin == 2);
  CHECK(as[1].end == 4);
}

TEST_CASE("the interpreter lists matches longest first") {
  TypologyRegistry registry;
  Lexicon lex;
  Grammar g = parse_grammar("r := \"a\" (\"b\" | \"b\" \"c\")? ;", registry);
  Document doc = parse_transcription(testing::transcript_xml({"a b c"}));
  auto tokens = tokenize_turn(doc, 0);
  std::vector<Annotation> none;
  MatchView view(tokens, none, 0, 0, tokens.size(), g.options);
  auto ms = interpret(g.rules[0].pattern, view, 0, lex, g.options.max_repeat);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].end == 3);
  CHECK(ms[1].end == 2);
  CHECK(ms[2].end == 1);
}

TEST_CASE("compiled and interpreted scans agree on a sample") {
  testing::Rng rng(5);
  TypologyRegistry registry;
  auto lex = std::make_shared<const Lexicon>(testing::random_stream_lexicon());
  for (int i = 0; i < 40; ++i) {
    Grammar g = testing::random_grammar(rng);
    Pass pass{"p", std::make_shared<const Transducer>(compile(g, lex))};
    for (int j = 0; j < 10; ++j) {
      AnnotatedDocument doc = read_annotated(testing::random_stream_document(rng, 3, 10));
      auto expected = testing::interpreted_scan(g, *lex, doc);
      std::vector<Annotation> got;
      try {
        auto out = apply_pass(pass, doc);
        for (const auto& a : out.annotations)
          if (a.layer == out.layers) got.push_back(a);
      } catch (const PassError&) {
        continue;  // the acceptance suite checks crossings against the oracle
      }
      auto key = [](std::vector<Annotation> v) {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t, int, std::string>> k;
        for (const auto& a : v) k.emplace_back(a.turn, a.begin, a.end, static_cast<int>(a.family), a.type);
        std::sort(k.begin(), k.end());
        return k;
      };
      CAPTURE(print_grammar(g));
      CHECK(key(got) == key(expected));
    }
  }
}

}  // TEST_SUITE

}  // namespace eslo
