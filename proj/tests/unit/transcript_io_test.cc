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
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <sstream>

#include "doctest.h"
#include "eslo/error.h"
#include "eslo/transcript.h"
#include "oracles.h"

namespace eslo {
namespace {

using boost::property_tree::ptree;
using testing::fixture_names;
using testing::fixture_path;
using testing::read_file;

ptree xml_tree(const std::string& xml, int flags = 0) {
  std::istringstream in(xml);
  ptree tree;
  boost::property_tree::read_xml(in, tree, flags);
  return tree;
}

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

const char* kPlaisez = R"(<?xml version="1.0" encoding="UTF-8"?>
<Trans><Episode><Section type="report" startTime="0" endTime="14.843">
<Turn speaker="spk4" startTime="10.88" endTime="14.843">
<Sync time="10.88"/>vous vous plaisez à Orléans?
<Sync time="12.721"/></Turn>
</Section></Episode></Trans>
)";

std::string one_turn(const std::string& body) {
  return "<Trans><Episode><Section><Turn speaker=\"s\" startTime=\"0\" endTime=\"5\"><Sync time=\"0\"/>" + body +
         "</Turn></Section></Episode></Trans>";
}

// Sync-delimited runs holding non-blank text, counted on an independent
// XML reading of the file.
std::size_t count_text_runs(const ptree& turn) {
  std::size_t runs = 0;
  bool has_text = false;
  auto visit = [&](auto&& self, const ptree& node) -> void {
    for (const auto& [name, child] : node) {
      if (name == "<xmlattr>") continue;
      if (name == "Sync") {
        runs += has_text;
        has_text = false;
      } else if (name == "<xmltext>") {
        const auto& s = child.data();
        if (s.find_first_not_of(" \t\r\n") != std::string::npos) has_text = true;
      } else {
        self(self, child);
      }
    }
  };
  visit(visit, turn);
  return runs + has_text;
}

void collect_turns(const ptree& node, std::vector<const ptree*>& out) {
  for (const auto& [name, child] : node) {
    if (name == "Turn") out.push_back(&child);
    else collect_turns(child, out);
  }
}

}  // namespace

TEST_SUITE("transcript_io") {

TEST_CASE("the interviewer turn parses into one turn with two sync marks") {
  Document doc = parse_transcription(kPlaisez);
  REQUIRE(doc.turns.size() == 1);
  const Turn& turn = doc.turns[0];
  CHECK(turn.speaker == "spk4");
  CHECK(turn.start.text == "10.88");
  CHECK(turn.end.millis == 14843);
  CHECK(std::count_if(turn.items.begin(), turn.items.end(),
                      [](const TurnItem& i) { return std::holds_alternative<SyncMark>(i); }) == 2);
  std::string text = turn.text();
  text.erase(text.find_last_not_of("\n") + 1);
  text.erase(0, text.find_first_not_of("\n"));
  CHECK(text == "vous vous plaisez à Orléans?");
}

TEST_CASE("an empty Trans element has no turns") {
  CHECK(parse_transcription("<Trans/>").turns.empty());
  CHECK(parse_transcription("<Trans></Trans>").turns.empty());
}

TEST_CASE("malformed XML reports its line") {
  try {
    parse_transcription("<Trans>\n<Turn>\n</Trans>");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == "xml");
    CHECK(e.line() >= 2);
  }
}

TEST_CASE("unknown inline elements are kept with a warning") {
  Document doc = parse_transcription(one_turn("bonjour <Foo bar=\"1\"/> madame"));
  CHECK_FALSE(doc.warnings.empty());
  CHECK(serialize(parse_transcription(serialize(doc))) == serialize(doc));
  CHECK(serialize(doc).find("<Foo bar=\"1\"/>") != std::string::npos);
}

TEST_CASE("convention checks") {
  CHECK(validate_conventions(parse_transcription(kPlaisez)).empty());
  auto period = validate_conventions(parse_transcription(one_turn("bonjour.")));
  REQUIRE(period.size() == 1);
  CHECK(period[0].rule == "forbidden-punctuation");
  CHECK(validate_conventions(parse_transcription(one_turn("mont-"))).empty());
  CHECK(validate_conventions(parse_transcription(one_turn("vous êtes là!"))).empty());
  auto comma = validate_conventions(parse_transcription(one_turn("oui, non; peut-être")));
  CHECK(comma.size() == 2);
}

TEST_CASE("segmentation") {
  CHECK(segment(parse_transcription(kPlaisez)).size() == 1);
  CHECK(segment(parse_transcription(one_turn(""))).empty());
  auto two = segment(parse_transcription(one_turn("oui <Sync time=\"1\"/> non")));
  CHECK(two.size() == 2);
}

TEST_CASE("segment counts agree with an independent XML reading on every fixture") {
  for (const auto& dir : {"corpus", "gold"}) {
    for (const auto& name : fixture_names()) {
      const std::string xml = read_file(fixture_path(std::string(dir) + "/" + name));
      std::vector<const ptree*> turns;
      const ptree tree = xml_tree(xml, boost::property_tree::xml_parser::no_concat_text);
      collect_turns(tree, turns);
      std::size_t expected = 0;
      for (const auto* t : turns) expected += count_text_runs(*t);
      CAPTURE(name);
      CHECK(segment(parse_transcription(xml)).size() == expected);
    }
  }
}

TEST_CASE("tokenization") {
  CHECK(surfaces(tokenize("vous vous plaisez à Orléans?")) ==
        std::vector<std::string>{"vous", "vous", "plaisez", "à", "Orléans", "?"});
  CHECK(tokenize("").empty());
  auto native = tokenize("moi je suis native de Pithiviers");
  CHECK(native.size() == 6);
  CHECK(std::all_of(native.begin(), native.end(), [](const Token& t) { return t.kind == TokenKind::kWord; }));
  CHECK(surfaces(tokenize("j'aime mieux")) == std::vector<std::string>{"j'", "aime", "mieux"});
  auto cut = tokenize("mont- euh");
  REQUIRE(cut.size() == 2);
  CHECK(cut[0].kind == TokenKind::kTruncatedWord);
}

TEST_CASE("tokens reconstruct their segment text") {
  for (const auto& name : fixture_names()) {
    Document doc = parse_transcription(read_file(fixture_path("corpus/" + name)));
    for (const auto& seg : segment(doc)) {
      std::string text = doc.turns[seg.turn].text().substr(seg.begin, seg.end - seg.begin);
      std::string rebuilt;
      std::size_t at = seg.begin;
      for (const auto& t : tokenize(seg)) {
        if (t.kind == TokenKind::kEvent) continue;
        REQUIRE(t.begin >= at);
        rebuilt += doc.turns[seg.turn].text().substr(at, t.begin - at) + t.surface;
        CHECK(doc.turns[seg.turn].text().substr(t.begin, t.end - t.begin) == t.surface);
        at = t.end;
      }
      rebuilt += doc.turns[seg.turn].text().substr(at, seg.end - at);
      CAPTURE(name);
      CHECK(rebuilt == text);
    }
  }
}

TEST_CASE("parse, serialize, parse is structurally stable on every fixture") {
  namespace xp = boost::property_tree::xml_parser;
  for (const auto& dir : {"corpus", "gold"}) {
    for (const auto& name : fixture_names()) {
      const std::string xml = read_file(fixture_path(std::string(dir) + "/" + name));
      Document first = parse_transcription(xml);
      const std::string once = serialize(first);
      Document second = parse_transcription(once);
      CAPTURE(name);
      CHECK(first.same_content(second));
      CHECK(serialize(second) == once);
      CHECK(xml_tree(xml, xp::no_concat_text | xp::trim_whitespace) ==
            xml_tree(once, xp::no_concat_text | xp::trim_whitespace));
    }
  }
}

TEST_CASE("a declared Latin-1 encoding is transcoded") {
  std::string xml = "<?xml version=\"1.0\" encoding=\"ISO-8859-1\"?>" + one_turn("\xe0 Orl\xe9" "ans");
  Document doc = parse_transcription(xml);
  CHECK(doc.turns[0].text() == "à Orléans");
}

}  // TEST_SUITE

}  // namespace eslo
