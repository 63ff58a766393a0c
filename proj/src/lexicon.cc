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

#include "eslo/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "eslo/error.h"
#include "eslo/text.h"

namespace eslo {

bool is_valid_category_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return name != "AnyWord" && name != "Upper";
}

void LexiconCategory::Trie::insert(const std::vector<std::string>& words) {
  int node = 0;
  for (const auto& w : words) {
    auto it = nodes[static_cast<std::size_t>(node)].next.find(w);
    if (it == nodes[static_cast<std::size_t>(node)].next.end()) {
      int created = static_cast<int>(nodes.size());
      nodes[static_cast<std::size_t>(node)].next.emplace(w, created);
      nodes.emplace_back();
      node = created;
    } else {
      node = it->second;
    }
  }
  nodes[static_cast<std::size_t>(node)].terminal = true;
}

int LexiconCategory::Trie::step(int node, const std::string& word) const {
  if (node < 0) return -1;
  const auto& next = nodes[static_cast<std::size_t>(node)].next;
  auto it = next.find(word);
  return it == next.end() ? -1 : it->second;
}

bool LexiconCategory::add(Entry entry) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), entry);
  if (it != entries_.end() && *it == entry) return false;
  if (entry.case_sensitive) {
    exact_.insert(entry.words);
  } else {
    std::vector<std::string> folded;
    folded.reserve(entry.words.size());
    for (const auto& w : entry.words) folded.push_back(text::fold(w));
    folded_.insert(folded);
  }
  entries_.insert(it, std::move(entry));
  return true;
}

LexiconCategory::Cursor LexiconCategory::advance(Cursor cursor, std::string_view surface) const {
  Cursor next;
  std::string word(surface);
  next.exact = exact_.step(cursor.exact, word);
  next.folded = cursor.folded < 0 ? -1 : folded_.step(cursor.folded, text::fold(word));
  return next;
}

bool LexiconCategory::accepts(Cursor cursor) const {
  return (cursor.folded >= 0 && folded_.nodes[static_cast<std::size_t>(cursor.folded)].terminal) ||
         (cursor.exact >= 0 && exact_.nodes[static_cast<std::size_t>(cursor.exact)].terminal);
}

void Lexicon::add(std::string_view surface, std::string_view category, bool case_sensitive) {
  if (!is_valid_category_name(category)) throw Error("lexicon", "invalid category name '" + std::string(category) + "'");
  LexiconCategory::Entry entry;
  entry.case_sensitive = case_sensitive;
  for (auto& tok : tokenize(text::nfc(surface))) entry.words.push_back(std::move(tok.surface));
  if (entry.words.empty()) throw Error("lexicon", "empty entry for category " + std::string(category));
  auto it = categories_.find(category);
  if (it == categories_.end()) it = categories_.emplace(std::string(category), LexiconCategory{}).first;
  it->second.add(std::move(entry));
}

void Lexicon::declare(std::string_view category) {
  if (!is_valid_category_name(category)) throw Error("lexicon", "invalid category name '" + std::string(category) + "'");
  if (!has_category(category)) categories_.emplace(std::string(category), LexiconCategory{});
}

void Lexicon::merge(const Lexicon& other) {
  for (const auto& [name, cat] : other.categories_) {
    auto it = categories_.find(name);
    if (it == categories_.end()) it = categories_.emplace(name, LexiconCategory{}).first;
    for (const auto& e : cat.entries()) it->second.add(e);
  }
}

bool Lexicon::has_category(std::string_view name) const { return categories_.find(name) != categories_.end(); }

const LexiconCategory* Lexicon::find(std::string_view name) const {
  auto it = categories_.find(name);
  return it == categories_.end() ? nullptr : &it->second;
}

const LexiconCategory& Lexicon::category(std::string_view name) const {
  const auto* c = find(name);
  if (!c) throw Error("lexicon", "unknown category '" + std::string(name) + "'");
  return *c;
}

std::size_t Lexicon::size(std::string_view name) const {
  const auto* c = find(name);
  return c ? c->size() : 0;
}

std::vector<std::string> Lexicon::category_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : categories_) out.push_back(name);
  return out;
}

std::string Lexicon::dump() const {
  std::vector<std::string> lines;
  for (const auto& [name, cat] : categories_) {
    for (const auto& e : cat.entries()) {
      std::string line;
      for (std::size_t i = 0; i < e.words.size(); ++i) {
        if (i) line += ' ';
        line += e.words[i];
      }
      line += '\t';
      line += name;
      if (e.case_sensitive) line += "\tcs";
      lines.push_back(std::move(line));
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + '\n';
  return out;
}

Lexicon parse_lexicon(std::string_view text, const std::string& origin) {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    auto fail = [&](const std::string& message) {
      throw ParseError("lexicon", origin + ": " + message, static_cast<int>(line_no), 0);
    };
    if (fields.size() < 2 || fields.size() > 3) fail("expected 'entry<TAB>Category[<TAB>flags]'");
    bool cs = false;
    if (fields.size() == 3) {
      std::string_view flags = fields[2];
      std::size_t f = 0;
      while (f <= flags.size()) {
        auto comma = flags.find(',', f);
        auto flag = flags.substr(f, comma == std::string_view::npos ? std::string_view::npos : comma - f);
        if (flag == "cs") {
          cs = true;
        } else if (!flag.empty()) {
          fail("unknown flag '" + std::string(flag) + "'");
        }
        if (comma == std::string_view::npos) break;
        f = comma + 1;
      }
    }
    if (!is_valid_category_name(fields[1])) fail("invalid category name '" + std::string(fields[1]) + "'");
    if (tokenize(fields[0]).empty()) fail("empty entry");
    lex.add(fields[0], fields[1], cs);
  }
  return lex;
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open lexicon " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_lexicon(buffer.str(), path);
}

std::size_t lookup_longest(const Lexicon& lexicon, std::span<const Token> tokens, std::size_t start,
                           std::string_view category_name) {
  const LexiconCategory& category = lexicon.category(category_name);
  if (start >= tokens.size() || !tokens[start].is_wordlike()) return 0;
  auto cursor = category.start();
  std::size_t best = 0;
  std::size_t i = start;
  while (i < tokens.size()) {
    if (tokens[i].kind == TokenKind::kEvent) {
      ++i;
      continue;
    }
    if (!tokens[i].is_wordlike()) break;
    cursor = category.advance(cursor, tokens[i].surface);
    if (!cursor.alive()) break;
    ++i;
    if (category.accepts(cursor)) best = i - start;
  }
  return best;
}

}  // namespace eslo
