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

#include "oracles.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "eslo/interpreter.h"
#include "eslo/match_view.h"

namespace eslo::testing {

int pick(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool chance(Rng& rng, double p) { return static_cast<double>(rng() % 1000000) < p * 1000000.0; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fixture_path(const std::string& relative) { return std::string(ESLO_FIXTURE_DIR) + "/" + relative; }

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(fixture_path("corpus")))
    if (e.path().extension() == ".trs") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Random grammars and streams

namespace {

const std::vector<std::string> kStreamWords = {"le", "la", "a", "b", "c", "de", "Paul", "Marie", "X", "paul"};
const std::vector<std::string> kNeTypes = {"loc.admi", "pers.hum", "time.date.rel"};
const std::vector<std::string> kDeTypes = {"pers.speaker", "identity.origin"};

PatternNode random_leaf(Rng& rng) {
  switch (pick(rng, 0, 5)) {
    case 0:
    case 1: {
      static const std::vector<std::string> words = {"le", "la", "a", "b", "c", "de", "paul", "Paul"};
      return PatternNode::literal(pick_one(rng, words), chance(rng, 0.3));
    }
    case 2: {
      static const std::vector<std::string> cats = {"Det", "Name", "Pair"};
      return PatternNode::category(pick_one(rng, cats));
    }
    case 3: return PatternNode::any_word();
    case 4: return PatternNode::uppercase();
    default: {
      static const std::vector<std::string> patterns = {"*", "loc.*", "pers.hum", "loc.admi"};
      return PatternNode::tag_span(Family::kNE, pick_one(rng, patterns));
    }
  }
}

PatternNode random_pattern(Rng& rng, int depth, bool allow_emit, int max_repeat) {
  if (depth >= 3 || chance(rng, 0.4)) return random_leaf(rng);
  auto children = [&](int n) {
    std::vector<PatternNode> out;
    for (int i = 0; i < n; ++i) out.push_back(random_pattern(rng, depth + 1, allow_emit, max_repeat));
    return out;
  };
  switch (pick(rng, 0, allow_emit ? 5 : 3)) {
    case 0: return PatternNode::sequence(children(pick(rng, 2, 3)));
    case 1: return PatternNode::alternation(children(pick(rng, 2, 3)));
    case 2: return PatternNode::optional(random_pattern(rng, depth + 1, allow_emit, max_repeat));
    case 3: {
      int min = pick(rng, 0, 2);
      int max = chance(rng, 0.3) ? kUnbounded : std::min(max_repeat, std::max(1, min + pick(rng, 0, 2)));
      if (max != kUnbounded) min = std::min(min, max);
      return PatternNode::repeat(random_pattern(rng, depth + 1, allow_emit, max_repeat), min, max);
    }
    default: {
      bool ne = chance(rng, 0.5);
      return PatternNode::emit(ne ? Family::kNE : Family::kDE, pick_one(rng, ne ? kNeTypes : kDeTypes),
                               random_pattern(rng, depth + 1, allow_emit, max_repeat));
    }
  }
}

PatternNode non_nullable(Rng& rng, PatternNode p) {
  if (!nullable(p)) return p;
  PatternNode head = random_leaf(rng);
  return PatternNode::sequence({std::move(head), std::move(p)});
}

}  // namespace

Lexicon random_stream_lexicon() {
  Lexicon lex;
  lex.add("le", "Det");
  lex.add("la", "Det");
  lex.add("le la", "Det");
  lex.add("Paul", "Name", true);
  lex.add("Marie", "Name", true);
  lex.add("Paul Marie", "Name", true);
  lex.add("a b", "Pair");
  lex.add("b", "Pair");
  lex.add("c a b", "Pair");
  return lex;
}

Grammar random_grammar(Rng& rng) {
  Grammar g;
  g.options.events_transparent = chance(rng, 0.7);
  g.options.turn_scope = chance(rng, 0.3);
  g.options.opaque_tags = chance(rng, 0.7);
  g.options.max_repeat = pick(rng, 2, 4);
  int rules = pick(rng, 1, 3);
  for (int r = 0; r < rules; ++r) {
    Rule rule;
    rule.name = "r" + std::to_string(r);
    rule.pattern = non_nullable(rng, random_pattern(rng, 0, true, g.options.max_repeat));
    if (chance(rng, 0.15)) rule.previous_turn = non_nullable(rng, random_pattern(rng, 1, false, g.options.max_repeat));
    g.rules.push_back(std::move(rule));
  }
  return g;
}

std::string transcript_xml(const std::vector<std::string>& turn_bodies) {
  std::string xml =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<Trans>\n<Speakers>\n<Speaker id=\"spk1\" name=\"a\"/>\n"
      "<Speaker id=\"spk2\" name=\"b\"/>\n</Speakers>\n<Episode>\n<Section type=\"report\" startTime=\"0\" endTime=\"" +
      std::to_string(10 * turn_bodies.size()) + "\">\n";
  for (std::size_t t = 0; t < turn_bodies.size(); ++t) {
    xml += "<Turn speaker=\"spk" + std::to_string(1 + t % 2) + "\" startTime=\"" + std::to_string(10 * t) +
           "\" endTime=\"" + std::to_string(10 * t + 9) + "\">\n";
    xml += turn_bodies[t];
    xml += "\n</Turn>\n";
  }
  return xml + "</Section>\n</Episode>\n</Trans>\n";
}

namespace {

std::string stream_words(Rng& rng, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += pick_one(rng, kStreamWords) + " ";
  return out;
}

std::string stream_body(Rng& rng, std::size_t turn, int max_items) {
  std::string body;
  int syncs = 0;
  int items = pick(rng, 0, max_items);
  for (int i = 0; i < items; ++i) {
    int k = pick(rng, 0, 11);
    if (k <= 5) {
      body += pick_one(rng, kStreamWords) + " ";
    } else if (k == 6) {
      body += "? ";
    } else if (k == 7) {
      body += "mont- ";
    } else if (k == 8) {
      body += "<Event desc=\"rire\" type=\"noise\" extent=\"instantaneous\"/> ";
    } else if (k == 9) {
      body += "<Sync time=\"" + std::to_string(10 * turn) + "." + std::to_string(++syncs) + "\"/>";
    } else {
      std::string inner = stream_words(rng, pick(rng, 1, 2));
      if (chance(rng, 0.3))
        inner = "<NE type=\"" + pick_one(rng, kNeTypes) + "\">" + inner + "</NE> " + stream_words(rng, pick(rng, 0, 1));
      body += "<NE type=\"" + pick_one(rng, kNeTypes) + "\">" + inner + "</NE> ";
    }
  }
  return body;
}

// Ends of the segments of a turn: maximal Sync-free token ranges.
std::vector<std::pair<std::size_t, std::size_t>> oracle_scopes(const std::vector<Token>& tokens, bool whole) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (whole) {
    if (!tokens.empty()) out.emplace_back(0, tokens.size());
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::kSync) continue;
    if (i > start) out.emplace_back(start, i);
    start = i + 1;
  }
  if (tokens.size() > start) out.emplace_back(start, tokens.size());
  return out;
}

// Pairs opens and closes in action order; empty spans vanish.
std::vector<Annotation> spans_of(const std::vector<PlacedAction>& actions, std::size_t turn) {
  std::vector<Annotation> out;
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (slot in out, open position)
  std::vector<Annotation> slots;
  std::vector<char> alive;
  for (const auto& a : actions) {
    if (a.action.open) {
      Annotation x;
      x.family = a.action.family;
      x.type = a.action.type;
      x.turn = turn;
      x.begin = a.pos;
      slots.push_back(x);
      alive.push_back(1);
      stack.emplace_back(slots.size() - 1, a.pos);
    } else {
      auto [slot, open] = stack.back();
      stack.pop_back();
      slots[slot].end = a.pos;
      if (a.pos <= open) alive[slot] = 0;
    }
  }
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (alive[i]) out.push_back(slots[i]);
  return out;
}

std::optional<RuleMatch> best_rule_match(const Grammar& g, const Lexicon& lex, const MatchView& view,
                                         std::size_t pos, const std::vector<char>& enabled) {
  std::optional<RuleMatch> best;
  for (std::size_t r = 0; r < g.rules.size(); ++r) {
    if (!enabled[r]) continue;
    auto all = interpret(g.rules[r].pattern, view, pos, lex, g.options.max_repeat);
    std::optional<RuleMatch> top;
    for (auto& m : all)
      if (!top || m.end > top->end) top = m;  // first among the longest
    if (top && (!best || top->end > best->end)) best = top;
  }
  return best;
}

}  // namespace

std::string random_stream_document(Rng& rng, int turns, int max_items) {
  std::vector<std::string> bodies;
  for (int t = 0; t < turns; ++t) bodies.push_back(stream_body(rng, static_cast<std::size_t>(t), max_items));
  return transcript_xml(bodies);
}

std::vector<Annotation> interpreted_scan(const Grammar& grammar, const Lexicon& lexicon,
                                         const AnnotatedDocument& doc) {
  std::vector<Annotation> out;
  for (std::size_t turn = 0; turn < doc.tokens.size(); ++turn) {
    const auto& tokens = doc.tokens[turn];
    std::vector<char> enabled(grammar.rules.size(), 1);
    for (std::size_t r = 0; r < grammar.rules.size(); ++r) {
      if (!grammar.rules[r].previous_turn) continue;
      enabled[r] = 0;
      if (turn == 0) continue;
      GrammarOptions whole = grammar.options;
      whole.turn_scope = true;
      const auto& prev = doc.tokens[turn - 1];
      MatchView view(prev, doc.annotations, turn - 1, 0, prev.size(), whole);
      for (std::size_t p = 0; p < prev.size() && !enabled[r]; ++p)
        if (view.can_start(p) &&
            !interpret(*grammar.rules[r].previous_turn, view, p, lexicon, grammar.options.max_repeat).empty())
          enabled[r] = 1;
    }
    for (auto [begin, end] : oracle_scopes(tokens, grammar.options.turn_scope)) {
      MatchView view(tokens, doc.annotations, turn, begin, end, grammar.options);
      std::size_t pos = begin;
      while (pos < end) {
        std::optional<RuleMatch> m;
        if (view.can_start(pos)) m = best_rule_match(grammar, lexicon, view, pos, enabled);
        if (!m) {
          ++pos;
          continue;
        }
        for (auto& a : spans_of(m->actions, turn)) {
          bool known = false;
          for (const auto& e : doc.annotations)
            known = known || (e.family == a.family && e.type == a.type && e.turn == a.turn && e.begin == a.begin &&
                              e.end == a.end);
          if (!known) out.push_back(std::move(a));
        }
        pos = std::max(m->end, pos + 1);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pack-vocabulary documents

namespace {

const std::vector<std::string> kPackPhrases = {
    "moi je suis native de Pithiviers", "j'aime mieux Orléans", "vous vous plaisez à Orléans ?",
    "alors ça fait longtemps que vous habitez", "neuf ans", "depuis quand", "quand êtes-vous arrivé",
    "nous sommes revenus parce que", "mon père était officier", "ma mère était boulangère",
    "le musicien Willy DeVille", "le concert de Johnny Hallyday", "je suis boucher", "mon mari est maçon",
    "euh", "hein ?", "deux ans et trois mois", "je suis né à Tours", "ma femme était coiffeuse", "moi je",
    "Paris", "la chanteuse Édith Piaf", "mes fils sont médecin"};

}  // namespace

std::string random_pack_document(Rng& rng, int turns) {
  std::vector<std::string> bodies;
  for (int t = 0; t < turns; ++t) {
    std::string body;
    int syncs = 0;
    int n = pick(rng, 1, 5);
    for (int i = 0; i < n; ++i) {
      if (chance(rng, 0.15)) body += "<Sync time=\"" + std::to_string(10 * t) + "." + std::to_string(++syncs) + "\"/>";
      if (chance(rng, 0.1)) body += "<Event desc=\"pi\" type=\"pronounce\" extent=\"instantaneous\"/> ";
      body += pick_one(rng, kPackPhrases) + " ";
    }
    bodies.push_back(body);
  }
  return transcript_xml(bodies);
}

namespace {

const std::vector<std::string> kTaggedWords = {"Pithiviers", "Orléans", "Paul", "Marie", "neuf", "ans", "mon",
                                               "père", "officier", "de", "la", "Tours", "boucher", "euh"};

std::string tagged_content(Rng& rng, int depth) {
  std::string out;
  int n = pick(rng, 1, 4);
  for (int i = 0; i < n; ++i) {
    if (depth < 3 && chance(rng, 0.35)) {
      bool de = chance(rng, 0.4);
      static const std::vector<std::string> de_types = {"pers.speaker", "pers.parent", "identity.origin", "work.field"};
      static const std::vector<std::string> ne_types = {"loc.admi", "pers.hum", "time.date.rel", "org"};
      out += de ? "<DE type=\"" + pick_one(rng, de_types) + "\">" : "<NE type=\"" + pick_one(rng, ne_types) + "\">";
      out += tagged_content(rng, depth + 1);
      out += de ? "</DE> " : "</NE> ";
    } else if (chance(rng, 0.08)) {
      out += "<Event desc=\"b\" type=\"noise\" extent=\"instantaneous\"/> ";
    } else {
      out += pick_one(rng, kTaggedWords) + " ";
    }
  }
  return out;
}

}  // namespace

std::string random_tagged_document(Rng& rng, int turns) {
  std::vector<std::string> bodies;
  for (int t = 0; t < turns; ++t) {
    std::string body = "<Sync time=\"" + std::to_string(10 * t) + "\"/>";
    body += tagged_content(rng, 0);
    if (chance(rng, 0.3)) body += "<Sync time=\"" + std::to_string(10 * t + 5) + "\"/>" + tagged_content(rng, 1);
    bodies.push_back(body);
  }
  return transcript_xml(bodies);
}

// ---------------------------------------------------------------------------
// Evaluation

std::int64_t exhaustive_matches(const std::vector<Annotation>& gold, const std::vector<Annotation>& system,
                                Level level, bool bracket_requires_type) {
  const Family family = level == Level::kDesignating ? Family::kDE : Family::kNE;
  std::vector<const Annotation*> g;
  std::vector<const Annotation*> s;
  for (const auto& a : gold)
    if (a.family == family) g.push_back(&a);
  for (const auto& a : system)
    if (a.family == family) s.push_back(&a);
  if (g.size() > 20) throw std::runtime_error("exhaustive_matches: too many gold annotations");

  auto fits = [&](const Annotation& x, const Annotation& y) {
    const bool same_turn = x.turn == y.turn;
    const bool overlap = same_turn && std::max(x.begin, y.begin) < std::min(x.end, y.end);
    const bool exact = same_turn && x.begin == y.begin && x.end == y.end;
    switch (level) {
      case Level::kDetection: return overlap;
      case Level::kType: return overlap && x.type == y.type;
      case Level::kBracket: return exact && (!bracket_requires_type || x.type == y.type);
      case Level::kDesignating: return exact && x.type == y.type;
    }
    return false;
  };

  // best[i][mask]: largest pairing of system[i..] with gold outside mask.
  const std::size_t masks = std::size_t{1} << g.size();
  std::vector<std::vector<int>> best(s.size() + 1, std::vector<int>(masks, 0));
  for (std::size_t i = s.size(); i-- > 0;) {
    for (std::size_t mask = 0; mask < masks; ++mask) {
      int v = best[i + 1][mask];
      for (std::size_t j = 0; j < g.size(); ++j)
        if (!(mask >> j & 1) && fits(*g[j], *s[i])) v = std::max(v, 1 + best[i + 1][mask | (std::size_t{1} << j)]);
      best[i][mask] = v;
    }
  }
  return best[0][0];
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

Record make_record(const std::string& table, const std::vector<std::string>& values) {
  Record r;
  const auto& cols = catalog_schema(table).columns;
  for (std::size_t i = 0; i < cols.size(); ++i) r.fields.emplace_back(cols[i], values.at(i));
  return r;
}

std::string random_text(Rng& rng) {
  static const std::vector<std::string> words = {"boucher", "Loiret", "orléans", "coiffeur", "CEP", "brevet",
                                                 "masculin", "féminin", "interview", "bruit", "non-renseigné", ""};
  std::string out = pick_one(rng, words);
  if (chance(rng, 0.3)) out += " " + pick_one(rng, words);
  return out;
}

std::string id(const std::string& prefix, int n) { return prefix + " " + std::to_string(n); }

// (prefix, number) order for ids of the form "PREFIX N".
bool id_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& x) {
    auto sp = x.rfind(' ');
    return std::make_pair(x.substr(0, sp), std::stol(x.substr(sp + 1)));
  };
  return split(a) < split(b);
}

}  // namespace

Catalog random_catalog(Rng& rng) {
  Catalog c;
  auto ids = [&](const std::string& prefix, int count) {
    std::set<int> numbers;
    while (static_cast<int>(numbers.size()) < count) numbers.insert(pick(rng, 1, 999));
    std::vector<std::string> out;
    for (int n : numbers) out.push_back(id(prefix, n));
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  };
  auto recs = ids("ENR", pick(rng, 0, 8));
  auto spks = ids(chance(rng, 0.5) ? "BA" : "CA", pick(rng, 0, 8));
  auto quest = ids("Q", pick(rng, 0, 3));
  auto team = ids("M", pick(rng, 0, 4));
  for (const auto& r : recs)
    c.table("recordings").rows.push_back(make_record(
        "recordings", {r, chance(rng, 0.7) ? "interview" : "other", "19" + std::to_string(pick(rng, 68, 74)),
                       random_text(rng), std::to_string(pick(rng, 5, 90)) + " min", random_text(rng)}));
  for (const auto& s : spks)
    c.table("speakers").rows.push_back(make_record(
        "speakers", {s, std::to_string(pick(rng, 1900, 1955)), random_text(rng), chance(rng, 0.5) ? "masculin" : "féminin",
                     std::to_string(pick(rng, 18, 80)), random_text(rng), std::to_string(pick(rng, 12, 25)),
                     random_text(rng), std::to_string(pick(rng, 1, 99)), chance(rng, 0.5) ? "D" : "B",
                     random_text(rng), random_text(rng), random_text(rng)}));
  for (const auto& q : quest) c.table("questionnaires").rows.push_back(make_record("questionnaires", {q, random_text(rng), ""}));
  for (const auto& m : team) c.table("team_members").rows.push_back(make_record("team_members", {m, random_text(rng), "transcriber"}));
  static const std::vector<std::string> statuses = {"raw", "reread", "validated"};
  std::vector<std::string> trans;
  if (!recs.empty()) {
    trans = ids("T", pick(rng, 0, 8));
    for (const auto& t : trans)
      c.table("transcriptions").rows.push_back(make_record(
          "transcriptions", {t, pick_one(rng, recs), random_text(rng), "2008", pick_one(rng, statuses), "", ""}));
    int links = pick(rng, 0, 10);
    for (int i = 0; i < links; ++i)
      c.table("links").rows.push_back(make_record(
          "links", {pick_one(rng, recs), spks.empty() || chance(rng, 0.2) ? "" : pick_one(rng, spks),
                    quest.empty() || chance(rng, 0.5) ? "" : pick_one(rng, quest), random_text(rng), ""}));
  }
  for (std::size_t i = 0; i < trans.size(); ++i) {
    if (chance(rng, 0.5))
      c.table("problems").rows.push_back(make_record(
          "problems", {id("P", static_cast<int>(i) + 1), pick_one(rng, trans), team.empty() ? "" : pick_one(rng, team), random_text(rng)}));
    if (chance(rng, 0.5))
      c.table("remarks").rows.push_back(make_record(
          "remarks", {id("R", static_cast<int>(i) + 1), pick_one(rng, trans), "", "syntax", random_text(rng)}));
  }
  return c;
}

std::vector<std::vector<std::pair<std::string, std::string>>> linear_query(const Catalog& catalog,
                                                                           const std::string& view,
                                                                           const std::vector<Filter>& filters) {
  const std::string table = view == "recordings" ? "recordings" : view == "speakers" ? "speakers" : "transcriptions";
  auto lower = [](std::string s) {
    // Random catalogs are ASCII apart from whole accented words, which
    // lower-casing leaves alone and compares bytewise.
    for (auto& c : s)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
  };
  std::vector<std::vector<std::pair<std::string, std::string>>> out;
  for (const auto& row : catalog.table(table).rows) {
    auto fields = row.fields;
    if (view == "recordings" || view == "speakers") {
      const std::string self = fields[0].second;
      std::vector<std::string> other;
      for (const auto& link : catalog.table("links").rows) {
        const std::string& rec = link.fields[0].second;
        const std::string& spk = link.fields[1].second;
        if (spk.empty()) continue;
        if (view == "recordings" && rec == self) other.push_back(spk);
        if (view == "speakers" && spk == self) other.push_back(rec);
      }
      std::sort(other.begin(), other.end(), id_less);
      other.erase(std::unique(other.begin(), other.end()), other.end());
      std::string joined;
      for (const auto& o : other) joined += (joined.empty() ? "" : ";") + o;
      fields.emplace_back(view == "recordings" ? "speakers" : "recordings", joined);
    }
    bool keep = true;
    for (const auto& f : filters) {
      std::string value;
      for (const auto& [k, v] : fields)
        if (k == f.field) value = v;
      keep = keep && (f.exact ? value == f.value : lower(value).find(lower(f.value)) != std::string::npos);
    }
    if (keep) out.push_back(fields);
  }
  auto rank = [](const std::string& s) { return s == "raw" ? 0 : s == "reread" ? 1 : 2; };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (view == "transcriptions-by-status") {
      int ra = rank(a[4].second);
      int rb = rank(b[4].second);
      if (ra != rb) return ra < rb;
    }
    return id_less(a[0].second, b[0].second);
  });
  return out;
}

}  // namespace eslo::testing
