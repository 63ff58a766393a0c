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

#include "eslo/csv.h"

#include "eslo/error.h"

namespace eslo::csv {

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  bool row_open = false;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    row_open = false;
  };
  while (i < text.size()) {
    char c = text[i];
    row_open = true;
    if (c == '"' && field.empty()) {
      const int open_line = line;
      const int open_column = column;
      ++i;
      ++column;
      while (true) {
        if (i >= text.size()) throw ParseError("csv", "unterminated quoted field", open_line, open_column);
        char q = text[i++];
        ++column;
        if (q == '"') {
          if (i < text.size() && text[i] == '"') {
            field += '"';
            ++i;
            ++column;
            continue;
          }
          break;
        }
        if (q == '\n') {
          ++line;
          column = 1;
        }
        field += q;
      }
      if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
        throw ParseError("csv", "text after a closing quote", line, column);
      continue;
    }
    if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      ++i;
      end_row();
      ++line;
      column = 0;
    } else if (c == '\n') {
      end_row();
      ++line;
      column = 0;
    } else if (c == '"') {
      throw ParseError("csv", "quote inside an unquoted field", line, column);
    } else {
      field += c;
    }
    ++i;
    ++column;
  }
  if (row_open) end_row();
  return rows;
}

std::string write_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string write(const std::vector<Row>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += write_field(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace eslo::csv
