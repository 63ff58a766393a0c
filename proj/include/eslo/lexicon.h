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

// Named word lists (first names, cities, professions, trigger words).
// Entries may span several words; lookup walks a word-level trie.
//
// File format, UTF-8, one entry per line:
//
//   entry<TAB>Category[<TAB>flags]
//
// `#` starts a comment line. The only flag is `cs` (case-sensitive);
// other entries match case-insensitively.

#ifndef ESLO_LEXICON_H_
#define ESLO_LEXICON_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eslo/transcript.h"

namespace eslo {

// Category names follow the grammar identifier syntax and must not clash
// with the built-in predicates.
bool is_valid_category_name(std::string_view name);

class LexiconCategory {
 public:
  struct Entry {
    std::vector<std::string> words;
    bool case_sensitive = false;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  // Position in the two tries (case-folded and exact). -1 means dead.
  struct Cursor {
    int folded = 0;
    int exact = 0;
    bool alive() const { return folded >= 0 || exact >= 0; }
  };

  // Returns false when the entry was already present.
  bool add(Entry entry);

  Cursor start() const { return {0, 0}; }
  Cursor advance(Cursor cursor, std::string_view surface) const;
  bool accepts(Cursor cursor) const;

  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  struct Node {
    std::unordered_map<std::string, int> next;
    bool terminal = false;
  };
  struct Trie {
    std::vector<Node> nodes{Node{}};
    void insert(const std::vector<std::string>& words);
    int step(int node, const std::string& word) const;
  };

  std::vector<Entry> entries_;
  Trie folded_;
  Trie exact_;
};

class Lexicon {
 public:
  // Adds one entry; `surface` is split into words with the transcript
  // tokenizer. Throws on an empty entry or invalid category name.
  void add(std::string_view surface, std::string_view category, bool case_sensitive = false);
  // Registers a category with no entries yet.
  void declare(std::string_view category);
  void merge(const Lexicon& other);

  bool has_category(std::string_view name) const;
  const LexiconCategory* find(std::string_view name) const;
  // Throws Error("lexicon") for an unknown category.
  const LexiconCategory& category(std::string_view name) const;
  std::size_t size(std::string_view category) const;
  std::vector<std::string> category_names() const;
  bool empty() const { return categories_.empty(); }

  // Sorted, normalized listing in the file format.
  std::string dump() const;

 private:
  std::map<std::string, LexiconCategory, std::less<>> categories_;
};

Lexicon parse_lexicon(std::string_view text, const std::string& origin = "<lexicon>");
Lexicon load_lexicon(const std::string& path);

// Length in tokens of the longest entry of `category` matching at `start`,
// 0 when none. Event tokens between words are skipped and counted in the
// length. Throws for an unknown category.
std::size_t lookup_longest(const Lexicon& lexicon, std::span<const Token> tokens, std::size_t start,
                           std::string_view category);

}  // namespace eslo

#endif  // ESLO_LEXICON_H_
