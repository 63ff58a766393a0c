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

#ifndef ESLO_ERROR_H_
#define ESLO_ERROR_H_

#include <stdexcept>
#include <string>

namespace eslo {

// Base of every error thrown by the library. `kind()` is a stable
// machine-readable tag used by the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Error located in a text input (XML, grammar, lexicon, CSV).
class ParseError : public Error {
 public:
  ParseError(std::string kind, const std::string& message, int line, int column)
      : Error(std::move(kind), format(message, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    std::string out = std::to_string(line);
    if (column > 0) out += ":" + std::to_string(column);
    return out + ": " + message;
  }

  int line_;
  int column_;
};

}  // namespace eslo

#endif  // ESLO_ERROR_H_
