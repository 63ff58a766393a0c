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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "eslo/catalog.h"
#include "eslo/csv.h"
#include "eslo/error.h"
#include "oracles.h"

namespace eslo {
namespace {

std::filesystem::path fixture_catalog() { return testing::fixture_path("catalog"); }

std::vector<std::string> ids(const std::vector<Record>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) out.push_back(r.fields.front().second);
  return out;
}

// A copy of the fixture catalog with one file replaced.
std::filesystem::path patched(const std::string& file, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "eslo-catalog-test";
  std::filesystem::remove_all(dir);
  std::filesystem::copy(fixture_catalog(), dir);
  std::ofstream(dir / file, std::ios::trunc) << content;
  return dir;
}

std::string catalog_error(const std::filesystem::path& dir) {
  try {
    import_catalog(dir);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("csv reading") {
  auto rows = csv::parse("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",,x\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == csv::Row{"a", "b,c", "say \"hi\""});
  CHECK(rows[1] == csv::Row{"multi\nline", "", "x"});
  CHECK(csv::parse(csv::write(rows)) == rows);
  CHECK_THROWS_AS(csv::parse("a\"b\n"), ParseError);
  CHECK_THROWS_AS(csv::parse("\"open\n"), ParseError);
  CHECK_THROWS_AS(csv::parse("\"a\"b\n"), ParseError);
}

TEST_CASE("natural id order") {
  CHECK(natural_less("ENR 3", "ENR 12"));
  CHECK_FALSE(natural_less("ENR 12", "ENR 3"));
  CHECK(natural_less("BA 9", "BA 725"));
  CHECK(natural_less("BA 725", "CA 1"));
}

TEST_CASE("status spellings") {
  CHECK(normalize_status("validée") == "validated");
  CHECK(normalize_status("RELUE") == "reread");
  CHECK(normalize_status("brute") == "raw");
  CHECK(normalize_status("lost") == "");
}

TEST_CASE("the butcher is found by every field of his record") {
  Catalog c = import_catalog(fixture_catalog());
  auto butcher = query(c, "speakers", {Filter::parse("profession=boucher")});
  REQUIRE(ids(butcher) == std::vector<std::string>{"BA 725"});
  CHECK(butcher[0].get("birth_date") == "1912");
  CHECK(butcher[0].get("profession") == "boucher, gérant boucherie supermarché");
  CHECK(butcher[0].get("recordings") == "ENR 3;ENR 12");
  for (const auto& [field, value] : butcher[0].fields) {
    CAPTURE(field);
    auto hits = ids(query(c, "speakers", {Filter{field, value, true}}));
    CHECK(std::find(hits.begin(), hits.end(), "BA 725") != hits.end());
  }
}

TEST_CASE("views and ordering") {
  Catalog c = import_catalog(fixture_catalog());
  CHECK(ids(query(c, "recordings", {})) == std::vector<std::string>{"ENR 3", "ENR 12", "ENR 105"});
  CHECK(query(c, "recordings", {Filter::parse("id==ENR 3")})[0].get("speakers") == "BA 9;BA 725");
  CHECK(ids(query(c, "transcriptions", {})) == std::vector<std::string>{"T 2", "T 7", "T 10"});
  CHECK(ids(query(c, "transcriptions-by-status", {})) == std::vector<std::string>{"T 2", "T 10", "T 7"});
  CHECK(ids(query(c, "speakers", {Filter::parse("sex==masculin"), Filter::parse("birth_place=LOIR")})) ==
        std::vector<std::string>{"BA 725"});
  CHECK_THROWS_AS(query(c, "tapes", {}), Error);
  CHECK_THROWS_AS(query(c, "speakers", {Filter::parse("shoe=42")}), Error);
  CHECK_THROWS_AS(Filter::parse("no operator"), Error);
}

TEST_CASE("an empty catalog answers every view with nothing") {
  Catalog empty;
  for (auto view : kCatalogViews) CHECK(query(empty, view, {}).empty());
}

TEST_CASE("random catalogs agree with a linear scan") {
  testing::Rng rng(17);
  for (int round = 0; round < 100; ++round) {
    Catalog c = testing::random_catalog(rng);
    check_catalog(c);
    for (auto view : kCatalogViews) {
      std::vector<Filter> filters;
      auto fields = view_fields(view);
      int n = testing::pick(rng, 0, 2);
      for (int i = 0; i < n; ++i) {
        static const std::vector<std::string> values = {"o", "B", "interview", "19", "raw", "ba 1", ""};
        filters.push_back(Filter{testing::pick_one(rng, fields), testing::pick_one(rng, values), testing::chance(rng, 0.3)});
      }
      auto got = query(c, view, filters);
      auto want = testing::linear_query(c, std::string(view), filters);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].fields == want[i]);
    }
  }
}

TEST_CASE("export then import keeps every record") {
  Catalog c = import_catalog(fixture_catalog());
  auto dir = std::filesystem::temp_directory_path() / "eslo-catalog-export";
  std::filesystem::remove_all(dir);
  export_catalog(c, dir);
  Catalog back = import_catalog(dir);
  for (const auto& schema : catalog_schemas()) CHECK(back.table(schema.name).rows == c.table(schema.name).rows);
}

TEST_CASE("integrity errors name the table and row") {
  CHECK(catalog_error(patched("links.csv", "recording_id,speaker_id,questionnaire_id,sound_problems,convention_problems\n"
                                           "ENR 12,BA 999,,,\n"))
            .find("links.csv row 2") != std::string::npos);
  CHECK(catalog_error(patched("speakers.csv", "id,birth_date\nBA 1,1900\n")).find("speakers.csv") != std::string::npos);
  CHECK(catalog_error(patched("team_members.csv", "id,name,role\nM 1,a,b\nM 1,c,d\n")).find("duplicate") !=
        std::string::npos);
  CHECK(catalog_error(patched("transcriptions.csv", "id,recording_id,transcribers,date,status,problems,remarks\n"
                                                    "T 2,ENR 3,,,lost,,\n"))
            .find("status") != std::string::npos);
  auto dir = patched("remarks.csv", "");
  std::filesystem::remove(dir / "remarks.csv");
  CHECK(catalog_error(dir).find("remarks.csv") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace eslo
