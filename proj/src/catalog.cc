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

#include "eslo/catalog.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "eslo/csv.h"
#include "eslo/error.h"
#include "eslo/text.h"
#include "json.hpp"

namespace eslo {

const std::vector<TableSchema>& catalog_schemas() {
  static const std::vector<TableSchema> kSchemas = {
      {"recordings", {"id", "type", "date", "place", "duration", "acoustics"}},
      {"speakers",
       {"id", "birth_date", "birth_place", "sex", "age", "education", "end_of_studies_age", "profession", "insee",
        "echelle_am", "family", "politics", "problems"}},
      {"questionnaires", {"id", "title", "questions"}},
      {"transcriptions", {"id", "recording_id", "transcribers", "date", "status", "problems", "remarks"}},
      {"links", {"recording_id", "speaker_id", "questionnaire_id", "sound_problems", "convention_problems"}},
      {"team_members", {"id", "name", "role"}},
      {"problems", {"id", "transcription_id", "member_id", "description"}},
      {"remarks", {"id", "transcription_id", "member_id", "kind", "text"}},
  };
  return kSchemas;
}

const TableSchema& catalog_schema(std::string_view table) {
  for (const auto& s : catalog_schemas())
    if (s.name == table) return s;
  throw Error("catalog", "unknown table '" + std::string(table) + "'");
}

const std::string& Record::get(std::string_view field) const {
  for (const auto& [k, v] : fields)
    if (k == field) return v;
  throw Error("catalog", "unknown field '" + std::string(field) + "'");
}

bool Record::has(std::string_view field) const {
  return std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return f.first == field; });
}

Catalog::Catalog() {
  for (const auto& s : catalog_schemas()) tables.push_back({s.name, {}});
}

Table& Catalog::table(std::string_view name) {
  for (auto& t : tables)
    if (t.name == name) return t;
  throw Error("catalog", "unknown table '" + std::string(name) + "'");
}

const Table& Catalog::table(std::string_view name) const { return const_cast<Catalog*>(this)->table(name); }

std::string normalize_status(std::string_view status) {
  std::string s = text::fold(status);
  auto trim = [](std::string& x) {
    x.erase(0, x.find_first_not_of(" \t"));
    x.erase(x.find_last_not_of(" \t") + 1);
  };
  trim(s);
  if (s == "raw" || s == "brute" || s == "brut") return "raw";
  if (s == "reread" || s == "relue" || s == "relu" || s == "read") return "reread";
  if (s == "validated" || s == "validée" || s == "validee" || s == "validé" || s == "valide") return "validated";
  return "";
}

namespace {

struct Reference {
  std::string table;
  std::string field;
  std::string target;
  bool optional;
};

const std::vector<Reference>& references() {
  static const std::vector<Reference> kReferences = {
      {"transcriptions", "recording_id", "recordings", false}, {"links", "recording_id", "recordings", false},
      {"links", "speaker_id", "speakers", true},               {"links", "questionnaire_id", "questionnaires", true},
      {"problems", "transcription_id", "transcriptions", false}, {"problems", "member_id", "team_members", true},
      {"remarks", "transcription_id", "transcriptions", false},  {"remarks", "member_id", "team_members", true},
  };
  return kReferences;
}

std::string row_name(const std::string& table, std::size_t row) {
  // Row numbers count the header as line 1.
  return table + ".csv row " + std::to_string(row + 2);
}

}  // namespace

void check_catalog(const Catalog& catalog) {
  std::map<std::string, std::set<std::string>> ids;
  for (const auto& schema : catalog_schemas()) {
    const Table& t = catalog.table(schema.name);
    bool keyed = schema.columns.front() == "id";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const Record& rec = t.rows[r];
      if (rec.fields.size() != schema.columns.size())
        throw Error("catalog", row_name(t.name, r) + ": expected " + std::to_string(schema.columns.size()) + " fields");
      if (!keyed) continue;
      const std::string& id = rec.get("id");
      if (id.empty()) throw Error("catalog", row_name(t.name, r) + ": empty id");
      if (!ids[t.name].insert(id).second) throw Error("catalog", row_name(t.name, r) + ": duplicate id '" + id + "'");
    }
  }
  for (std::size_t r = 0; r < catalog.table("transcriptions").rows.size(); ++r) {
    const auto& status = catalog.table("transcriptions").rows[r].get("status");
    if (normalize_status(status) != status)
      throw Error("catalog", row_name("transcriptions", r) + ": unknown status '" + status + "'");
  }
  for (const auto& ref : references()) {
    const Table& t = catalog.table(ref.table);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const std::string& value = t.rows[r].get(ref.field);
      if (value.empty() && ref.optional) continue;
      if (!ids[ref.target].count(value))
        throw Error("catalog", row_name(ref.table, r) + ": " + ref.field + " '" + value + "' names no row of " +
                                   ref.target + ".csv");
    }
  }
}

Catalog import_catalog(const std::filesystem::path& dir) {
  Catalog catalog;
  for (const auto& schema : catalog_schemas()) {
    auto path = dir / (schema.name + ".csv");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("catalog", "missing table file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::vector<csv::Row> rows;
    try {
      rows = csv::parse(buffer.str());
    } catch (const ParseError& e) {
      throw ParseError("csv", path.string() + ": " + e.what(), e.line(), e.column());
    }
    if (rows.empty() || rows.front() != schema.columns) {
      std::string expected;
      for (const auto& c : schema.columns) expected += (expected.empty() ? "" : ",") + c;
      throw Error("catalog", path.string() + ": header must be " + expected);
    }
    Table& table = catalog.table(schema.name);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      auto& row = rows[r];
      if (row.size() == 1 && row[0].empty()) continue;
      if (row.size() != schema.columns.size())
        throw Error("catalog", path.string() + ": row " + std::to_string(r + 1) + " has " +
                                   std::to_string(row.size()) + " fields, expected " +
                                   std::to_string(schema.columns.size()));
      Record rec;
      for (std::size_t c = 0; c < row.size(); ++c) {
        std::string value = text::nfc(row[c]);
        if (schema.columns[c] == "status") {
          std::string status = normalize_status(value);
          if (status.empty())
            throw Error("catalog", path.string() + ": row " + std::to_string(r + 1) + ": unknown status '" + value + "'");
          value = status;
        }
        rec.fields.emplace_back(schema.columns[c], std::move(value));
      }
      table.rows.push_back(std::move(rec));
    }
  }
  check_catalog(catalog);
  return catalog;
}

void export_catalog(const Catalog& catalog, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& schema : catalog_schemas()) {
    std::vector<csv::Row> rows{schema.columns};
    for (const auto& rec : catalog.table(schema.name).rows) {
      csv::Row row;
      for (const auto& [k, v] : rec.fields) row.push_back(v);
      rows.push_back(std::move(row));
    }
    auto path = dir / (schema.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write " + path.string());
    out << csv::write(rows);
  }
}

Filter Filter::parse(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw Error("catalog", "filter '" + std::string(text) + "' is not field=value or field==value");
  Filter f;
  f.field = std::string(text.substr(0, eq));
  if (eq + 1 < text.size() && text[eq + 1] == '=') {
    f.exact = true;
    f.value = std::string(text.substr(eq + 2));
  } else {
    f.value = std::string(text.substr(eq + 1));
  }
  f.value = text::nfc(f.value);
  return f;
}

bool Filter::matches(const Record& record) const {
  const std::string& v = record.get(field);
  if (exact) return v == value;
  return text::fold(v).find(text::fold(value)) != std::string::npos;
}

bool natural_less(std::string_view a, std::string_view b) {
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      std::string_view x = a.substr(i, ie - i);
      std::string_view y = b.substr(j, je - j);
      x.remove_prefix(std::min(x.find_first_not_of('0'), x.size()));
      y.remove_prefix(std::min(y.find_first_not_of('0'), y.size()));
      if (x.size() != y.size()) return x.size() < y.size();
      if (x != y) return x < y;
      // Equal values: fewer leading zeros first, for a total order.
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

namespace {

bool known_view(std::string_view view) {
  return std::find(std::begin(kCatalogViews), std::end(kCatalogViews), view) != std::end(kCatalogViews);
}

std::string_view view_table(std::string_view view) {
  if (view == "recordings") return "recordings";
  if (view == "speakers") return "speakers";
  return "transcriptions";
}

int status_rank(const std::string& status) {
  if (status == "raw") return 0;
  if (status == "reread") return 1;
  return 2;
}

std::string join_ids(std::set<std::string, decltype(&natural_less)> ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ";") + id;
  return out;
}

}  // namespace

std::vector<std::string> view_fields(std::string_view view) {
  if (!known_view(view)) throw Error("catalog", "unknown view '" + std::string(view) + "'");
  auto fields = catalog_schema(view_table(view)).columns;
  if (view == "recordings") fields.push_back("speakers");
  if (view == "speakers") fields.push_back("recordings");
  return fields;
}

std::vector<Record> query(const Catalog& catalog, std::string_view view, const std::vector<Filter>& filters) {
  const auto fields = view_fields(view);
  for (const auto& f : filters)
    if (std::find(fields.begin(), fields.end(), f.field) == fields.end())
      throw Error("catalog", "view '" + std::string(view) + "' has no field '" + f.field + "'");

  std::map<std::string, std::set<std::string, decltype(&natural_less)>> joined;
  if (view == "recordings" || view == "speakers") {
    const bool by_recording = view == "recordings";
    for (const auto& link : catalog.table("links").rows) {
      const std::string& rec = link.get("recording_id");
      const std::string& spk = link.get("speaker_id");
      if (spk.empty()) continue;
      const std::string& key = by_recording ? rec : spk;
      joined.try_emplace(key, &natural_less).first->second.insert(by_recording ? spk : rec);
    }
  }

  std::vector<Record> out;
  for (const auto& row : catalog.table(view_table(view)).rows) {
    Record rec = row;
    if (view == "recordings" || view == "speakers") {
      auto it = joined.find(row.get("id"));
      rec.fields.emplace_back(view == "recordings" ? "speakers" : "recordings",
                              it == joined.end() ? std::string() : join_ids(it->second));
    }
    if (std::all_of(filters.begin(), filters.end(), [&](const Filter& f) { return f.matches(rec); }))
      out.push_back(std::move(rec));
  }
  std::stable_sort(out.begin(), out.end(), [&](const Record& a, const Record& b) {
    if (view == "transcriptions-by-status") {
      int ra = status_rank(a.get("status"));
      int rb = status_rank(b.get("status"));
      if (ra != rb) return ra < rb;
    }
    return natural_less(a.get("id"), b.get("id"));
  });
  return out;
}

std::string records_to_json(const std::vector<Record>& records) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& rec : records) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rec.fields) o[k] = v;
    j.push_back(std::move(o));
  }
  return j.dump(2) + '\n';
}

namespace {

std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (char c : s)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  return n;
}

}  // namespace

std::string records_to_table(const std::vector<Record>& records) {
  if (records.empty()) return "(no records)\n";
  const auto& first = records.front().fields;
  std::vector<std::size_t> width(first.size());
  for (std::size_t c = 0; c < first.size(); ++c) width[c] = display_width(first[c].first);
  for (const auto& rec : records)
    for (std::size_t c = 0; c < rec.fields.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], display_width(rec.fields[c].second));
  auto line = [&](auto cell) {
    std::string out;
    for (std::size_t c = 0; c < width.size(); ++c) {
      std::string s = cell(c);
      out += s;
      if (c + 1 < width.size()) out += std::string(width[c] - display_width(s) + 2, ' ');
    }
    return out + '\n';
  };
  std::string out = line([&](std::size_t c) { return first[c].first; });
  for (const auto& rec : records) out += line([&](std::size_t c) { return rec.fields[c].second; });
  return out;
}

}  // namespace eslo
