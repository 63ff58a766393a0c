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

#include "eslo/packs.h"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "eslo/error.h"
#include "json.hpp"

namespace eslo {

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Manifest parse_manifest(std::string_view text, const std::string& origin) {
  Manifest m;
  std::set<std::string> names;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto words = split_words(line);
    if (words.empty()) continue;
    auto fail = [&](const std::string& message) { throw ParseError("manifest", origin + ": " + message, line_no, 0); };
    if (words[0] == "lexicon") {
      if (words.size() != 2) fail("expected 'lexicon FILE'");
      m.lexicons.push_back(words[1]);
    } else if (words[0] == "type") {
      if (words.size() != 3) fail("expected 'type FAMILY TYPE'");
      auto family = parse_family(words[1]);
      if (!family) fail("unknown family '" + words[1] + "'");
      m.types.emplace_back(*family, words[2]);
    } else if (words[0] == "pass") {
      if (words.size() < 3) fail("expected 'pass NAME FILE [key=value...]'");
      Manifest::PassEntry p{words[1], words[2], {}, line_no};
      if (!names.insert(p.name).second) fail("duplicate pass '" + p.name + "'");
      for (std::size_t i = 3; i < words.size(); ++i) {
        auto eq = words[i].find('=');
        if (eq == std::string::npos || eq == 0) fail("expected key=value, got '" + words[i] + "'");
        p.options.emplace_back(words[i].substr(0, eq), words[i].substr(eq + 1));
        GrammarOptions probe;
        try {
          set_grammar_option(probe, p.options.back().first, p.options.back().second);
        } catch (const Error& e) {
          fail(e.what());
        }
      }
      m.passes.push_back(std::move(p));
    } else {
      fail("unknown directive '" + words[0] + "'");
    }
  }
  if (m.passes.empty()) throw ParseError("manifest", origin + ": no passes", line_no, 0);
  return m;
}

std::filesystem::path default_pack_dir() {
  if (const char* env = std::getenv("ESLO_PACK_PATH"); env && *env) return env;
  return ESLO_DEFAULT_PACK_DIR;
}

GrammarPack load_pack(const std::filesystem::path& dir, TypologyRegistry& registry) {
  GrammarPack pack;
  pack.dir = dir;
  pack.name = dir.filename().string();
  if (pack.name.empty()) pack.name = dir.parent_path().filename().string();
  const auto manifest_path = dir / "cascade.manifest";
  Manifest manifest = parse_manifest(read_file(manifest_path), manifest_path.string());

  for (const auto& [family, type] : manifest.types) {
    try {
      if (!registry.of(family).accepts(type)) registry.of(family).extend(type);
    } catch (const Error& e) {
      throw Error("pack", manifest_path.string() + ": " + e.what());
    }
  }

  auto lexicon = std::make_shared<Lexicon>();
  for (const auto& file : manifest.lexicons) {
    auto path = dir / file;
    lexicon->merge(parse_lexicon(read_file(path), path.string()));
    pack.lexicon_files.push_back(path.string());
  }
  pack.lexicon = lexicon;

  for (const auto& entry : manifest.passes) {
    auto path = dir / entry.file;
    Grammar g = parse_grammar(read_file(path), registry, lexicon.get(), path.string());
    for (const auto& [key, value] : entry.options) set_grammar_option(g.options, key, value);
    pack.passes.push_back({entry.name, path.string(), std::move(g)});
  }
  return pack;
}

Cascade GrammarPack::compile() const {
  Cascade cascade;
  for (const auto& pass : passes) {
    try {
      cascade.add_pass(name + "/" + pass.name, eslo::compile(pass.grammar, lexicon));
    } catch (const Error& e) {
      throw Error("pack", pass.file + ": " + e.what());
    }
  }
  return cascade;
}

GrammarPack load_ne_pack(TypologyRegistry& registry) { return load_pack(default_pack_dir() / "ne", registry); }

GrammarPack load_de_pack(TypologyRegistry& registry) { return load_pack(default_pack_dir() / "de", registry); }

namespace {

constexpr std::string_view kCompiledFormat = "eslo-compiled-cascade/1";

}  // namespace

std::string write_compiled(const Cascade& cascade, const TypologyRegistry& registry) {
  nlohmann::ordered_json j;
  j["format"] = kCompiledFormat;
  j["types"] = nlohmann::ordered_json::array();
  const TypologyRegistry builtin;
  for (Family f : {Family::kNE, Family::kDE})
    for (const auto& type : registry.of(f).types())
      if (!builtin.of(f).accepts(type)) j["types"].push_back({family_name(f), type});
  j["passes"] = nlohmann::ordered_json::array();
  for (const auto& pass : cascade.passes())
    j["passes"].push_back({{"name", pass.name}, {"transducer", nlohmann::ordered_json::parse(pass.transducer->to_json())}});
  return j.dump() + '\n';
}

Cascade read_compiled(std::string_view json, TypologyRegistry& registry) {
  Cascade cascade;
  try {
    auto j = nlohmann::json::parse(json);
    if (j.at("format").get<std::string>() != kCompiledFormat) throw Error("compiled", "unsupported cache format");
    for (const auto& t : j.at("types")) {
      auto family = parse_family(t.at(0).get<std::string>());
      if (!family) throw Error("compiled", "unknown family in type list");
      auto type = t.at(1).get<std::string>();
      if (!registry.of(*family).accepts(type)) registry.of(*family).extend(type);
    }
    for (const auto& p : j.at("passes"))
      cascade.add_pass(p.at("name").get<std::string>(), Transducer::from_json(p.at("transducer").dump()));
  } catch (const nlohmann::json::exception& e) {
    throw Error("compiled", e.what());
  }
  return cascade;
}

Cascade load_cascade(const std::vector<std::string>& packs, TypologyRegistry& registry) {
  Cascade cascade;
  for (const auto& p : packs) {
    if (p.size() > 5 && p.compare(p.size() - 5, 5, ".json") == 0) {
      cascade.append(read_compiled(read_file(p), registry));
      continue;
    }
    std::filesystem::path dir = p;
    if (p.find('/') == std::string::npos && !std::filesystem::exists(dir / "cascade.manifest"))
      dir = default_pack_dir() / p;
    cascade.append(load_pack(dir, registry).compile());
  }
  return cascade;
}

}  // namespace eslo
