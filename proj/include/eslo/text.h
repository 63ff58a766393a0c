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

// UTF-8 helpers backed by ICU.

#ifndef ESLO_TEXT_H_
#define ESLO_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace eslo::text {

void append_utf8(std::string& out, std::uint32_t code_point);

// Decodes the code point starting at `pos` and advances `pos`. Invalid
// sequences decode as U+FFFD and advance one byte.
std::uint32_t next_code_point(std::string_view s, std::size_t& pos);

// Canonical composition (NFC).
std::string nfc(std::string_view s);

// Full case folding followed by NFC; used for case-insensitive comparison.
std::string fold(std::string_view s);

bool is_space(std::uint32_t cp);
bool is_letter(std::uint32_t cp);
bool is_upper(std::uint32_t cp);
bool is_lower(std::uint32_t cp);
bool is_punctuation(std::uint32_t cp);
bool is_apostrophe(std::uint32_t cp);

// True when the first code point of `s` is an uppercase or titlecase letter.
bool starts_upper(std::string_view s);

}  // namespace eslo::text

#endif  // ESLO_TEXT_H_
