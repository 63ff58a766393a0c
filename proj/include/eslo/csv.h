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

// RFC 4180 comma-separated values: quoted fields may hold commas, quotes
// (doubled) and line breaks. CRLF and LF line ends are both accepted.

#ifndef ESLO_CSV_H_
#define ESLO_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace eslo::csv {

using Row = std::vector<std::string>;

// Throws ParseError("csv") on a quote inside an unquoted field, text after
// a closing quote, or an unterminated quoted field. A trailing line break
// does not start a new row.
std::vector<Row> parse(std::string_view text);

std::string write_field(std::string_view field);
std::string write(const std::vector<Row>& rows);

}  // namespace eslo::csv

#endif  // ESLO_CSV_H_
