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

// Corpus catalog: eight tables read from CSV files in one directory, each
// with a fixed header row.
//
//   recordings.csv      id,type,date,place,duration,acoustics
//   speakers.csv        id,birth_date,birth_place,sex,age,education,end_of_studies_age,
//                       profession,insee,echelle_am,family,politics,problems
//   questionnaires.csv  id,title,questions
//   transcriptions.csv  id,recording_id,transcribers,date,status,problems,remarks
//   links.csv           recording_id,speaker_id,questionnaire_id,sound_problems,convention_problems
//   team_members.csv    id,name,role
//   problems.csv        id,transcription_id,member_id,description
//   remarks.csv         id,transcription_id,member_id,kind,text
//
// Empty reference fields in links, problems and remarks mean "none".
// Status reads raw/brute, reread/relue, validated/validée (accents and case
// ignored) and is stored as raw, reread or validated.

#ifndef ESLO_CATALOG_H_
#define ESLO_CATALOG_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eslo {

struct TableSchema {
  std::string name;  // file name without ".csv"
  std::vector<std::string> columns;
};

const std::vector<TableSchema>& catalog_schemas();
const TableSchema& catalog_schema(std::string_view table);

// Field values in schema order.
struct Record {
  std::vector<std::pair<std::string, std::string>> fields;

  const std::string& get(std::string_view field) const;  // throws Error("catalog") for an unknown field
  bool has(std::string_view field) const;
  friend bool operator==(const Record&, const Record&) = default;
};

struct Table {
  std::string name;
  std::vector<Record> rows;
};

struct Catalog {
  // One table per schema, in catalog_schemas() order.
  std::vector<Table> tables;

  Catalog();
  Table& table(std::string_view name);
  const Table& table(std::string_view name) const;
};

// Throws ParseError("csv") for malformed files, Error("catalog") for a
// missing file, a wrong header, a duplicate id, a bad status, or a dangling
// reference (naming table, row and field).
Catalog import_catalog(const std::filesystem::path& dir);

// Checks the same conditions as import_catalog on an in-memory catalog.
void check_catalog(const Catalog& catalog);

void export_catalog(const Catalog& catalog, const std::filesystem::path& dir);

// "field=value": case-insensitive substring; "field==value": exact.
struct Filter {
  std::string field;
  std::string value;
  bool exact = false;

  static Filter parse(std::string_view text);  // throws Error("catalog")
  bool matches(const Record& record) const;
};

inline constexpr std::string_view kCatalogViews[] = {"recordings", "transcriptions", "transcriptions-by-status",
                                                     "speakers"};

// The fields a view exposes: the table's columns plus the joined ones
// (recordings: speakers; speakers: recordings).
std::vector<std::string> view_fields(std::string_view view);

// Records of `view` satisfying every filter, ordered by id (by status rank
// then id for transcriptions-by-status). Throws Error("catalog") for an
// unknown view or filter field.
std::vector<Record> query(const Catalog& catalog, std::string_view view, const std::vector<Filter>& filters);

// Id order: digit runs compare by value, other text bytewise.
bool natural_less(std::string_view a, std::string_view b);

std::string normalize_status(std::string_view status);  // "" when unknown

std::string records_to_json(const std::vector<Record>& records);
std::string records_to_table(const std::vector<Record>& records);

}  // namespace eslo

#endif  // ESLO_CATALOG_H_
