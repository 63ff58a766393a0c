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

// eslo: command-line front end.
//
// Exit codes: 0 success, 1 error (JSON object on stderr), 2 usage error,
// 3 convention violations found by `validate`.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eslo/annotated_io.h"
#include "eslo/anonymize.h"
#include "eslo/catalog.h"
#include "eslo/cascade.h"
#include "eslo/error.h"
#include "eslo/evaluation.h"
#include "eslo/packs.h"
#include "eslo/transcript.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolations = 3;

// Error raised while handling one input file.
// Error raised while handling one input file. Keeps the location of a
// ParseError, which a plain copy of the base class would drop.
struct FileError {
  FileError(std::string f, const eslo::Error& e) : file(std::move(f)), kind(e.kind()), message(e.what()) {
    if (const auto* p = dynamic_cast<const eslo::ParseError*>(&e)) {
      line = p->line();
      column = p->column();
    }
  }
  std::string file;
  std::string kind;
  std::string message;
  int line = 0;  // 0: no location
  int column = 0;
};

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw eslo::Error("io", "cannot open " + path);
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    return;
  }
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw eslo::Error("io", "cannot write " + path);
  out << bytes;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  return out;
}

bool is_transcript(const fs::path& p) { return p.extension() == ".trs" || p.extension() == ".xml"; }

// Transcript files of a directory (sorted) or the file itself.
std::vector<std::string> expand(const std::string& path) {
  if (!fs::is_directory(path)) return {path};
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(path))
    if (entry.is_regular_file() && is_transcript(entry.path())) out.push_back(entry.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

// Settings read from --config (key=value lines, '#' comments).
struct Config {
  std::string ne_element = "NE";
  std::int64_t sparsity_threshold = 100;
  std::optional<bool> events_transparent;
  std::vector<std::pair<eslo::Family, std::string>> types;
};

Config read_config(const std::string& path) {
  Config config;
  if (path.empty()) return config;
  std::istringstream in(read_input(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw eslo::ParseError("config", path + ": expected key=value", line_no, 0);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "ne_element") {
      if (value != "NE" && value != "EN") throw eslo::ParseError("config", path + ": ne_element is NE or EN", line_no, 0);
      config.ne_element = value;
    } else if (key == "sparsity_threshold") {
      try {
        config.sparsity_threshold = std::stoll(value);
      } catch (const std::exception&) {
        throw eslo::ParseError("config", path + ": sparsity_threshold is an integer", line_no, 0);
      }
    } else if (key == "events") {
      if (value != "transparent" && value != "opaque")
        throw eslo::ParseError("config", path + ": events is transparent or opaque", line_no, 0);
      config.events_transparent = value == "transparent";
    } else if (key == "pack_path") {
      ::setenv("ESLO_PACK_PATH", value.c_str(), 1);
    } else if (key == "types") {
      for (const auto& entry : split_list(value)) {
        auto colon = entry.find(':');
        auto family = colon == std::string::npos ? std::nullopt : eslo::parse_family(entry.substr(0, colon));
        if (!family) throw eslo::ParseError("config", path + ": types entries are NE:type or DE:type", line_no, 0);
        config.types.emplace_back(*family, entry.substr(colon + 1));
      }
    } else {
      throw eslo::ParseError("config", path + ": unknown key '" + key + "'", line_no, 0);
    }
  }
  return config;
}

eslo::TypologyRegistry make_registry(const Config& config) {
  eslo::TypologyRegistry registry;
  for (const auto& [family, type] : config.types)
    if (!registry.of(family).accepts(type)) registry.of(family).extend(type);
  return registry;
}

eslo::AnnotatedDocument read_doc(const std::string& path, const eslo::TypologyRegistry& registry) {
  return eslo::read_annotated(read_input(path), path, &registry);
}

void print_warnings(const eslo::Document& doc) {
  for (const auto& w : doc.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

// ---- subcommands ----

int run_validate(const std::vector<std::string>& inputs, bool json) {
  bool any = false;
  for (const auto& input : inputs) {
    for (const auto& path : expand(input)) {
      try {
        auto doc = eslo::parse_transcription(read_input(path), path);
        print_warnings(doc);
        for (const auto& v : eslo::validate_conventions(doc)) {
          any = true;
          if (json) {
            nlohmann::ordered_json j = {{"file", path},   {"turn", v.turn},       {"begin", v.begin},
                                        {"end", v.end},   {"rule", v.rule},       {"message", v.message}};
            std::printf("%s\n", j.dump().c_str());
          } else {
            std::printf("%s: turn %zu [%zu,%zu) %s: %s\n", path.c_str(), v.turn, v.begin, v.end, v.rule.c_str(),
                        v.message.c_str());
          }
        }
      } catch (const eslo::Error& e) {
        throw FileError(path, e);
      }
    }
  }
  return any ? kExitViolations : 0;
}

int run_compile(const std::vector<std::string>& packs, const std::string& output, const Config& config) {
  auto registry = make_registry(config);
  auto cascade = eslo::load_cascade(packs, registry);
  write_output(output, eslo::write_compiled(cascade, registry));
  std::fprintf(stderr, "compiled %zu passes\n", cascade.passes().size());
  return 0;
}

int run_annotate(const std::vector<std::string>& cascade_names, const std::vector<std::string>& inputs,
                 const std::string& output_dir, bool standoff, std::string element, const Config& config) {
  auto registry = make_registry(config);
  if (element.empty()) element = config.ne_element;
  eslo::Cascade cascade;
  if (!cascade_names.empty()) cascade = eslo::load_cascade(cascade_names, registry);
  cascade.events_transparent = config.events_transparent;
  cascade.ne_element = element;

  std::vector<std::string> files;
  for (const auto& input : inputs.empty() ? std::vector<std::string>{"-"} : inputs)
    for (const auto& f : input == "-" ? std::vector<std::string>{"-"} : expand(input)) files.push_back(f);
  if (files.size() > 1 && output_dir.empty())
    throw eslo::Error("usage", "several inputs need --output-dir");

  for (const auto& path : files) {
    try {
      auto doc = eslo::run_cascade(cascade, read_doc(path, registry));
      print_warnings(doc.document);
      std::string bytes = standoff ? eslo::write_standoff(doc) : eslo::write_inline(doc, element);
      std::string target;
      if (!output_dir.empty()) {
        fs::path name = path == "-" ? fs::path("stdin.trs") : fs::path(path).filename();
        if (standoff) name += ".jsonl";
        target = (fs::path(output_dir) / name).string();
      }
      write_output(target, bytes);
    } catch (const eslo::Error& e) {
      throw FileError(path, e);
    }
  }
  return 0;
}

std::vector<eslo::AnnotatedDocument> read_set(const std::vector<std::string>& files,
                                              const eslo::TypologyRegistry& registry) {
  std::vector<eslo::AnnotatedDocument> docs;
  for (const auto& f : files) {
    try {
      docs.push_back(read_doc(f, registry));
    } catch (const eslo::Error& e) {
      throw FileError(f, e);
    }
  }
  return docs;
}

int run_evaluate(const std::string& gold, const std::string& system, bool greedy, bool span_only, bool json,
                 const Config& config) {
  auto registry = make_registry(config);
  auto gold_files = expand(gold);
  std::vector<std::string> system_files;
  if (fs::is_directory(system)) {
    for (const auto& g : gold_files) {
      auto s = fs::path(system) / fs::path(g).filename();
      if (!fs::exists(s)) throw eslo::Error("evaluate", "no system file for " + g + " (expected " + s.string() + ")");
      system_files.push_back(s.string());
    }
  } else {
    system_files = expand(system);
  }
  eslo::EvalOptions options;
  options.strategy = greedy ? eslo::MatchStrategy::kGreedy : eslo::MatchStrategy::kMaximum;
  options.bracket_requires_type = !span_only;
  auto report = eslo::score(read_set(gold_files, registry), read_set(system_files, registry), options);
  std::string out = json ? report.to_json() + "\n" : report.to_table();
  std::fwrite(out.data(), 1, out.size(), stdout);
  if (auto warning = eslo::sparsity_warning(report, config.sparsity_threshold))
    std::fprintf(stderr, "warning: %s\n", warning->c_str());
  return 0;
}

int run_split(const std::vector<std::string>& inputs, double fraction, std::uint64_t seed, bool json) {
  std::vector<eslo::CorpusFile> files;
  for (const auto& input : inputs)
    for (const auto& f : expand(input)) {
      if (!fs::is_regular_file(f)) throw eslo::Error("io", "cannot open " + f);
      files.push_back({f, static_cast<std::uint64_t>(fs::file_size(f))});
    }
  auto split = eslo::split_corpus(std::move(files), fraction, seed);
  if (json) {
    nlohmann::ordered_json j;
    auto list = [](const std::vector<eslo::CorpusFile>& fs) {
      nlohmann::ordered_json a = nlohmann::ordered_json::array();
      for (const auto& f : fs) a.push_back({{"path", f.path}, {"bytes", f.bytes}});
      return a;
    };
    j["work"] = list(split.work);
    j["eval"] = list(split.eval);
    j["work_bytes"] = split.work_bytes;
    j["eval_bytes"] = split.eval_bytes;
    j["eval_fraction"] = split.eval_fraction;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    for (const auto& f : split.work) std::printf("work\t%s\t%llu\n", f.path.c_str(), static_cast<unsigned long long>(f.bytes));
    for (const auto& f : split.eval) std::printf("eval\t%s\t%llu\n", f.path.c_str(), static_cast<unsigned long long>(f.bytes));
    std::printf("# %zu work files (%llu bytes), %zu evaluation files (%llu bytes), %.1f%%\n", split.work.size(),
                static_cast<unsigned long long>(split.work_bytes), split.eval.size(),
                static_cast<unsigned long long>(split.eval_bytes), 100.0 * split.eval_fraction);
  }
  return 0;
}

int run_anonymize(const std::string& input, const std::string& policy_file, const std::string& targets,
                  const std::string& output, const std::string& mapping_path, const Config& config) {
  auto registry = make_registry(config);
  std::string policy_text = targets;
  if (!policy_file.empty()) policy_text += "\n" + read_input(policy_file);
  auto policy = eslo::parse_policy(policy_text, registry);
  try {
    auto doc = read_doc(input, registry);
    print_warnings(doc.document);
    auto result = eslo::pseudonymize(doc, policy, config.ne_element);
    write_output(mapping_path, eslo::write_mapping(result.mapping));
    write_output(output, eslo::serialize(result.document));
  } catch (const eslo::Error& e) {
    throw FileError(input, e);
  }
  return 0;
}

int run_deanonymize(const std::string& input, const std::string& mapping_path, const std::string& output) {
  try {
    auto mapping = eslo::read_mapping(read_input(mapping_path));
    auto doc = eslo::parse_transcription(read_input(input), input);
    write_output(output, eslo::serialize(eslo::restore(std::move(doc), mapping)));
  } catch (const eslo::Error& e) {
    throw FileError(input, e);
  }
  return 0;
}

int run_catalog(const std::string& view, const std::string& dir, const std::vector<std::string>& where,
                const std::string& format) {
  std::vector<eslo::Filter> filters;
  for (const auto& w : where) filters.push_back(eslo::Filter::parse(w));
  auto catalog = eslo::import_catalog(dir);
  auto records = eslo::query(catalog, view, filters);
  std::string out = format == "json" ? eslo::records_to_json(records) : eslo::records_to_table(records);
  std::fwrite(out.data(), 1, out.size(), stdout);
  return 0;
}

void report_error(const FileError& e) {
  nlohmann::ordered_json j;
  j["error"]["kind"] = e.kind;
  j["error"]["message"] = e.message;
  if (!e.file.empty()) j["error"]["file"] = e.file;
  if (e.line > 0) j["error"]["line"] = e.line;
  if (e.column > 0) j["error"]["column"] = e.column;
  std::fprintf(stderr, "%s\n", j.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascaded finite-state annotation of Transcriber transcripts"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value settings file")->check(CLI::ExistingFile);

  std::vector<std::string> inputs;
  bool json = false;

  auto* validate = app.add_subcommand("validate", "check transcription conventions");
  validate->add_option("files", inputs, "transcripts or directories")->required();
  validate->add_flag("--json", json, "one JSON object per violation");

  std::string pack;
  std::string output;
  auto* compile = app.add_subcommand("compile", "compile a grammar pack to a transducer cache");
  compile->add_option("packs", pack, "comma-separated pack names or directories")->required();
  compile->add_option("-o,--output", output, "cache file (default stdout)");

  std::string cascade_list;
  std::string output_dir;
  bool standoff = false;
  std::string element;
  auto* annotate = app.add_subcommand("annotate", "run grammar cascades over transcripts");
  annotate->add_option("--cascade", cascade_list, "comma-separated packs, pack directories or caches")->required();
  annotate->add_option("files", inputs, "transcripts or directories (default stdin)");
  annotate->add_option("--output-dir", output_dir, "write one output per input here");
  annotate->add_flag("--standoff", standoff, "write JSON lines instead of inline tags");
  annotate->add_option("--element", element, "NE element name")->check(CLI::IsMember({"NE", "EN"}));

  std::string gold;
  std::string system;
  bool greedy = false;
  bool span_only = false;
  auto* evaluate = app.add_subcommand("evaluate", "score system annotations against gold ones");
  evaluate->add_option("gold", gold, "gold file or directory")->required();
  evaluate->add_option("system", system, "system file or directory")->required();
  evaluate->add_flag("--greedy", greedy, "first-free pairing instead of maximum matching");
  evaluate->add_flag("--bracket-span-only", span_only, "bracket level ignores types");
  evaluate->add_flag("--json", json, "JSON report");

  double fraction = 0.051;
  std::uint64_t seed = 0;
  auto* split = app.add_subcommand("split", "partition a corpus into work and evaluation files");
  split->add_option("files", inputs, "transcripts or directories")->required();
  split->add_option("--fraction", fraction, "evaluation share of bytes")->capture_default_str();
  split->add_option("--seed", seed, "tie-breaking seed")->capture_default_str();
  split->add_flag("--json", json, "JSON output");

  std::string input;
  std::string policy_file;
  std::string targets;
  std::string mapping;
  auto* anonymize = app.add_subcommand("anonymize", "replace targeted spans by placeholders");
  anonymize->add_option("file", input, "annotated transcript")->required();
  anonymize->add_option("--policy", policy_file, "policy file")->check(CLI::ExistingFile);
  anonymize->add_option("--targets", targets, "comma-separated type patterns");
  anonymize->add_option("-o,--output", output, "output file (default stdout)");
  anonymize->add_option("--mapping", mapping, "mapping file to write")->required();

  auto* deanonymize = app.add_subcommand("deanonymize", "restore an anonymized transcript");
  deanonymize->add_option("file", input, "anonymized transcript")->required();
  deanonymize->add_option("--mapping", mapping, "mapping file")->required()->check(CLI::ExistingFile);
  deanonymize->add_option("-o,--output", output, "output file (default stdout)");

  std::string view;
  std::string catalog_dir;
  std::vector<std::string> where;
  std::string format = "table";
  auto* catalog = app.add_subcommand("catalog", "query the corpus catalog");
  catalog->add_option("view", view, "recordings, transcriptions, transcriptions-by-status or speakers")->required();
  catalog->add_option("--dir", catalog_dir, "directory of table CSV files")->required();
  catalog->add_option("--where", where, "field=value (substring) or field==value (exact)");
  catalog->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Config config = read_config(config_path);
    if (*validate) return run_validate(inputs, json);
    if (*compile) return run_compile(split_list(pack), output, config);
    if (*annotate) return run_annotate(split_list(cascade_list), inputs, output_dir, standoff, element, config);
    if (*evaluate) return run_evaluate(gold, system, greedy, span_only, json, config);
    if (*split) return run_split(inputs, fraction, seed, json);
    if (*anonymize) {
      if (policy_file.empty() && targets.empty()) {
        std::fprintf(stderr, "anonymize: give --policy or --targets\n");
        return kExitUsage;
      }
      return run_anonymize(input, policy_file, targets, output, mapping, config);
    }
    if (*deanonymize) return run_deanonymize(input, mapping, output);
    if (*catalog) return run_catalog(view, catalog_dir, where, format);
  } catch (const FileError& e) {
    report_error(e);
    return kExitError;
  } catch (const eslo::Error& e) {
    if (e.kind() == "usage") {
      std::fprintf(stderr, "%s\n", e.what());
      return kExitUsage;
    }
    report_error(FileError("", e));
    return kExitError;
  } catch (const std::exception& e) {
    report_error(FileError("", eslo::Error("internal", e.what())));
    return kExitError;
  }
  return kExitUsage;
}
