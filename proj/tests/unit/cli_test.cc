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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "eslo/annotated_io.h"
#include "eslo/transcript.h"
#include "json.hpp"
#include "oracles.h"

namespace eslo {
namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "eslo-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the command line through the shell; `args` is appended verbatim.
Run eslo(const std::string& args) {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("'") + ESLO_CLI + "' " + args + " 2>'" + err.string() + "'";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = testing::read_file(err.string());
  return r;
}

std::string corpus(const std::string& name = "") { return testing::fixture_path("corpus/" + name); }
std::string gold(const std::string& name = "") { return testing::fixture_path("gold/" + name); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
  CHECK(eslo("--help").status == 0);
  CHECK(eslo("annotate --frobnicate " + corpus("native.trs")).status == 2);
  CHECK(eslo("").status == 2);
}

TEST_CASE("module errors are JSON on stderr with exit 1") {
  Run r = eslo("annotate --cascade nowhere " + corpus("native.trs"));
  CHECK(r.status == 1);
  auto j = nlohmann::json::parse(r.err);
  CHECK(j["error"]["kind"].is_string());
  Run missing = eslo("validate /no/such/file.trs");
  CHECK(missing.status == 1);
  CHECK(nlohmann::json::parse(missing.err)["error"]["file"] == "/no/such/file.trs");
}

TEST_CASE("malformed XML errors carry the line") {
  const fs::path bad = scratch() / "bad.trs";
  std::ofstream(bad) << "<Trans>\n<Turn>\n</Trans>\n";
  Run r = eslo("annotate --cascade ne " + bad.string());
  CHECK(r.status == 1);
  auto j = nlohmann::json::parse(r.err);
  CHECK(j["error"]["kind"] == "xml");
  CHECK(j["error"]["line"].get<int>() >= 2);
}

TEST_CASE("validate") {
  CHECK(eslo("validate " + corpus()).status == 0);
  const fs::path dotted = scratch() / "dotted.trs";
  std::ofstream(dotted) << testing::transcript_xml({"bonjour."});
  Run r = eslo("validate --json " + dotted.string());
  CHECK(r.status == 3);
  CHECK(r.out.find("forbidden-punctuation") != std::string::npos);
}

TEST_CASE("annotate nests DE over NE") {
  Run r = eslo("annotate --cascade ne,de " + corpus("native.trs"));
  REQUIRE(r.status == 0);
  CHECK(r.out.find("<DE type=\"pers.speaker\">") < r.out.find("<DE type=\"identity.origin\">"));
  CHECK(r.out.find("<DE type=\"identity.origin\">") < r.out.find("<NE type=\"loc.admi\">"));
  CHECK(eslo("annotate --cascade ne,de " + corpus("native.trs")).out == r.out);
}

TEST_CASE("annotate without matches returns the canonical input") {
  const fs::path plain = scratch() / "plain.trs";
  const std::string xml = testing::transcript_xml({"euh bon ben voilà", "oui"});
  std::ofstream(plain) << xml;
  Run r = eslo("annotate --cascade ne,de " + plain.string());
  REQUIRE(r.status == 0);
  CHECK(r.out == serialize(parse_transcription(xml)));
}

TEST_CASE("piping NE into DE equals the combined cascade") {
  for (const auto& name : testing::fixture_names()) {
    Run piped = eslo("annotate --cascade ne " + corpus(name) + " | '" + ESLO_CLI + "' annotate --cascade de");
    Run both = eslo("annotate --cascade ne,de " + corpus(name));
    CAPTURE(name);
    CHECK(piped.status == 0);
    CHECK(piped.out == both.out);
  }
}

TEST_CASE("standoff output") {
  Run r = eslo("annotate --standoff --cascade ne,de " + corpus("officier.trs"));
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"type\":\"work.field\"") != std::string::npos);
}

TEST_CASE("the fixture corpus scores perfectly") {
  const fs::path out = scratch() / "system";
  REQUIRE(eslo("annotate --cascade ne,de --output-dir " + out.string() + " " + corpus()).status == 0);
  Run r = eslo("evaluate --json " + gold() + " " + out.string());
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const auto& [level, counts] : j["levels"].items()) {
    CAPTURE(level);
    CHECK(counts["precision"] == 1.0);
    CHECK(counts["recall"] == 1.0);
  }
  CHECK(r.err.find("fewer than 100") != std::string::npos);
  Run table = eslo("evaluate " + gold() + " " + out.string());
  CHECK(table.out.find("100.0%") != std::string::npos);
}

TEST_CASE("compiled caches annotate like the packs") {
  const fs::path cache = scratch() / "cascade.json";
  REQUIRE(eslo("compile ne,de -o " + cache.string()).status == 0);
  CHECK(eslo("annotate --cascade " + cache.string() + " " + corpus("habitez.trs")).out ==
        eslo("annotate --cascade ne,de " + corpus("habitez.trs")).out);
}

TEST_CASE("split") {
  Run r = eslo("split --json --fraction 0.5 --seed 3 " + corpus());
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["eval"].size() + j["work"].size() == testing::fixture_names().size());
  CHECK(eslo("split --json --fraction 0.5 --seed 3 " + corpus()).out == r.out);
  CHECK(eslo("split " + corpus("native.trs")).status == 1);
}

TEST_CASE("anonymize and deanonymize") {
  const fs::path anon = scratch() / "anon.trs";
  const fs::path map = scratch() / "anon.jsonl";
  const fs::path back = scratch() / "back.trs";
  REQUIRE(eslo("anonymize --targets loc.admi,pers.* --mapping " + map.string() + " -o " + anon.string() + " " +
               gold("native.trs"))
              .status == 0);
  CHECK(testing::read_file(anon.string()).find("LOCATION-1") != std::string::npos);
  REQUIRE(eslo("deanonymize --mapping " + map.string() + " -o " + back.string() + " " + anon.string()).status == 0);
  CHECK(testing::read_file(back.string()) == write_inline(read_annotated(testing::read_file(gold("native.trs")))));
  CHECK(eslo("anonymize --targets loc.moon --mapping " + map.string() + " " + gold("native.trs")).status == 1);
}

TEST_CASE("catalog queries") {
  const std::string dir = testing::fixture_path("catalog");
  Run r = eslo("catalog speakers --dir " + dir + " --where profession=boucher --format json");
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["id"] == "BA 725");
  Run table = eslo("catalog transcriptions-by-status --dir " + dir);
  CHECK(table.status == 0);
  CHECK(table.out.find("T 2") < table.out.find("T 7"));
  CHECK(eslo("catalog tapes --dir " + dir).status != 0);
}

}  // TEST_SUITE

}  // namespace eslo
