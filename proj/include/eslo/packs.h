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

// Grammar packs: a directory of *.lg grammars and *.lex lexicons ordered by
// a cascade.manifest file:
//
//   # comment
//   lexicon cities.lex
//   type NE loc.city            # extends the typology
//   pass places places.lg scope=turn events=blocking
//
// Paths are relative to the manifest. Pass options override the grammar's
// %option lines.

#ifndef ESLO_PACKS_H_
#define ESLO_PACKS_H_

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eslo/cascade.h"
#include "eslo/grammar.h"
#include "eslo/lexicon.h"
#include "eslo/typology.h"

namespace eslo {

struct Manifest {
  struct PassEntry {
    std::string name;
    std::string file;
    std::vector<std::pair<std::string, std::string>> options;
    int line = 0;
  };
  std::vector<std::string> lexicons;
  std::vector<std::pair<Family, std::string>> types;
  std::vector<PassEntry> passes;
};

// Throws ParseError("manifest") with the line number.
Manifest parse_manifest(std::string_view text, const std::string& origin = "<manifest>");

struct GrammarPack {
  struct PackPass {
    std::string name;
    std::string file;
    Grammar grammar;
  };

  std::string name;  // directory name, e.g. "ne"
  std::filesystem::path dir;
  std::shared_ptr<const Lexicon> lexicon;
  std::vector<std::string> lexicon_files;
  std::vector<PackPass> passes;

  // Compiles every pass; pass names are "<pack>/<pass>". Compile errors are
  // rethrown as Error("pack") prefixed with the grammar file.
  Cascade compile() const;
};

// $ESLO_PACK_PATH when set, else the packs/ directory of the source tree.
std::filesystem::path default_pack_dir();

// Loads a pack; `registry` receives the manifest's type extensions. Errors
// name the offending file.
GrammarPack load_pack(const std::filesystem::path& dir, TypologyRegistry& registry);

GrammarPack load_ne_pack(TypologyRegistry& registry);
GrammarPack load_de_pack(TypologyRegistry& registry);

// Compiled cascade cache: every pass with its transducer, plus the types of
// `registry` beyond the built-in ones.
std::string write_compiled(const Cascade& cascade, const TypologyRegistry& registry);
// Throws Error("compiled") for a malformed cache.
Cascade read_compiled(std::string_view json, TypologyRegistry& registry);

// Packs by name ("ne", "de"), directory path, or compiled cache (".json"
// file), in order.
Cascade load_cascade(const std::vector<std::string>& packs, TypologyRegistry& registry);

}  // namespace eslo

#endif  // ESLO_PACKS_H_
