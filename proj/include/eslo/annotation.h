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

#ifndef ESLO_ANNOTATION_H_
#define ESLO_ANNOTATION_H_

#include <cstddef>
#include <string>
#include <tuple>

#include "eslo/typology.h"

namespace eslo {

// A typed span over the tokens of one turn, [begin, end) in token indices.
struct Annotation {
  Family family = Family::kNE;
  std::string type;
  std::size_t turn = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  // Application order: 0 for annotations read from input, then one layer per
  // pass. Among equal spans a higher layer is the outer one.
  int layer = 0;
  // Order of the opening tag within its layer; lower is outer.
  int rank = 0;
  std::string pass;
  std::string rule;
  int depth = 0;  // number of enclosing annotations

  bool contains(const Annotation& o) const {
    return turn == o.turn && begin <= o.begin && o.end <= end;
  }
  bool crosses(const Annotation& o) const {
    return turn == o.turn && ((begin < o.begin && o.begin < end && end < o.end) ||
                              (o.begin < begin && begin < o.end && o.end < end));
  }
};

// Document order with outer annotations first.
inline bool nesting_order(const Annotation& a, const Annotation& b) {
  return std::make_tuple(a.turn, a.begin, -static_cast<long>(a.end), -a.layer, a.rank) <
         std::make_tuple(b.turn, b.begin, -static_cast<long>(b.end), -b.layer, b.rank);
}

// Identity used when comparing annotation sets.
inline bool same_annotation(const Annotation& a, const Annotation& b) {
  return a.family == b.family && a.type == b.type && a.turn == b.turn && a.begin == b.begin && a.end == b.end;
}

}  // namespace eslo

#endif  // ESLO_ANNOTATION_H_
