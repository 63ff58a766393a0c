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

// Random inputs and independent reference implementations used by the unit
// and acceptance tests. Nothing here calls the code path it checks.

#ifndef ESLO_TESTS_ORACLES_H_
#define ESLO_TESTS_ORACLES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eslo/annotation.h"
#include "eslo/cascade.h"
#include "eslo/catalog.h"
#include "eslo/grammar.h"
#include "eslo/lexicon.h"

namespace eslo::testing {

using Rng = std::mt19937_64;

// Uniform in [lo, hi].
int pick(Rng& rng, int lo, int hi);
bool chance(Rng& rng, double p);
template <typename T>
const T& pick_one(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::string read_file(const std::string& path);
std::string fixture_path(const std::string& relative);
std::vector<std::string> fixture_names();  // base names of tests/fixtures/corpus/*.trs

// ---- random grammars and token streams ----

// Categories Det, Name and Pair over the random stream vocabulary, some
// entries spanning two words, some case-sensitive.
Lexicon random_stream_lexicon();

Grammar random_grammar(Rng& rng);

// Wraps turn bodies (raw XML content) in a minimal Transcriber document.
std::string transcript_xml(const std::vector<std::string>& turn_bodies);

// A random document over the random-stream vocabulary: words, question
// marks, truncations, Events, Syncs, and nested NE tags.
std::string random_stream_document(Rng& rng, int turns, int max_items);

// Interpreter-driven scan of one grammar over a document: the annotations a
// pass would add, in scan order. Copies of existing annotations are left out.
std::vector<Annotation> interpreted_scan(const Grammar& grammar, const Lexicon& lexicon,
                                         const AnnotatedDocument& doc);

// ---- pack-vocabulary documents ----

// Turns built from the words the shipped packs react to, without tags.
std::string random_pack_document(Rng& rng, int turns);

// Random well-nested NE/DE tags over random words.
std::string random_tagged_document(Rng& rng, int turns);

// ---- evaluation ----

enum class Level { kDetection, kType, kBracket, kDesignating };

// Largest one-to-one pairing by exhaustive search over gold subsets.
std::int64_t exhaustive_matches(const std::vector<Annotation>& gold, const std::vector<Annotation>& system,
                                Level level, bool bracket_requires_type);

// ---- catalog ----

Catalog random_catalog(Rng& rng);
// Linear filtering and ordering over the raw tables.
std::vector<std::vector<std::pair<std::string, std::string>>> linear_query(
    const Catalog& catalog, const std::string& view, const std::vector<Filter>& filters);

}  // namespace eslo::testing

#endif  // ESLO_TESTS_ORACLES_H_
