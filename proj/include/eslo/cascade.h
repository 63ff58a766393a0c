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

// Ordered application of compiled grammars. Each pass scans every scope
// left to right, keeps the longest match at each position and resumes
// after it; later passes see the annotations of earlier ones.

#ifndef ESLO_CASCADE_H_
#define ESLO_CASCADE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eslo/annotation.h"
#include "eslo/error.h"
#include "eslo/transcript.h"
#include "eslo/transducer.h"
#include "eslo/typology.h"

namespace eslo {

class PassError : public Error {
 public:
  PassError(std::string pass, std::string rule, const std::string& message)
      : Error("pass", pass + (rule.empty() ? "" : "/" + rule) + ": " + message),
        pass_(std::move(pass)),
        rule_(std::move(rule)) {}

  const std::string& pass() const { return pass_; }
  const std::string& rule() const { return rule_; }

 private:
  std::string pass_;
  std::string rule_;
};

struct AnnotatedDocument {
  Document document;
  std::vector<std::vector<Token>> tokens;  // per turn, from tokenize_turn
  std::vector<Annotation> annotations;     // kept in nesting order
  std::vector<std::string> provenance;     // applied passes, in order
  int layers = 0;                          // highest annotation layer

  // Sorts annotations into nesting order and recomputes depths.
  void normalize();
};

// Tokenizes `doc`; its inline spans are not converted (see read_annotated).
AnnotatedDocument tokenized(Document doc);

struct Pass {
  std::string name;
  std::shared_ptr<const Transducer> transducer;
};

class Cascade {
 public:
  // Throws Error("cascade") on a duplicate pass name.
  void add_pass(std::string name, Transducer transducer);
  void add_pass(Pass pass);
  void append(const Cascade& other);

  const std::vector<Pass>& passes() const { return passes_; }
  bool empty() const { return passes_.empty(); }

  // Overrides the Event handling of every pass when set.
  std::optional<bool> events_transparent;
  std::string ne_element = "NE";

 private:
  std::vector<Pass> passes_;
};

// Throws PassError when an emitted span crosses an existing annotation. An
// emitted span identical to an existing annotation (family, type, span) is
// not added again, so re-annotating annotated text changes nothing.
AnnotatedDocument apply_pass(const Pass& pass, AnnotatedDocument doc,
                             std::optional<bool> events_transparent = std::nullopt);

AnnotatedDocument run_cascade(const Cascade& cascade, AnnotatedDocument doc);
AnnotatedDocument run_cascade(const Cascade& cascade, Document doc);

struct NestingViolation {
  std::size_t first = 0;  // indices into AnnotatedDocument::annotations
  std::size_t second = 0;
  std::string message;
};

// Every pair of crossing annotations, plus annotations whose span is empty
// or leaves its turn (reported with first == second).
std::vector<NestingViolation> check_nesting(const AnnotatedDocument& doc);

// Unknown types and containments forbidden by nesting_allowed.
std::vector<NestingViolation> check_typology(const AnnotatedDocument& doc, const TypologyRegistry& registry);

}  // namespace eslo

#endif  // ESLO_CASCADE_H_
