#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jawi/error.hpp"
#include "jawi/letter.hpp"
#include "jawi/ruleset.hpp"
#include "jawi/shaping.hpp"

namespace jawi {

// ---------------------------------------------------------------------------
// Latin -> Jawi
// ---------------------------------------------------------------------------

namespace detail {

struct ConsonantRule {
  std::string_view reading;
  std::size_t reading_index;
  std::size_t table_index;
  const Letter* letter;
};

// Every reading that starts with a consonant, ordered by match priority:
// longest first, then primary-before-fallback, then table order.
inline std::vector<ConsonantRule> consonant_rules(const RuleTable& table) {
  std::vector<ConsonantRule> rules;
  const auto& letters = table.letters();
  for (std::size_t t = 0; t < letters.size(); ++t) {
    const auto& readings = letters[t].latin_readings;
    for (std::size_t r = 0; r < readings.size(); ++r) {
      if (!is_latin_vowel(readings[r].front())) rules.push_back({readings[r], r, t, &letters[t]});
    }
  }
  std::stable_sort(rules.begin(), rules.end(), [](const ConsonantRule& a, const ConsonantRule& b) {
    return std::tuple(b.reading.size(), a.reading_index, a.table_index) <
           std::tuple(a.reading.size(), b.reading_index, b.table_index);
  });
  return rules;
}

}  // namespace detail

/// Deterministic left-to-right encoder.
///
/// A word-initial vowel is written on alif (plus the second letter of a
/// word-initial digraph when one carries that vowel); consonants take the
/// greedy longest reading match; later vowels follow the medial vowel map.
/// Traditional spelling drops a medial "a" that follows a consonant.
inline ShapedText latin_to_jawi(std::string_view word, const RuleTable& table, SpellingMode mode) {
  if (word.empty()) throw Error(ErrorCode::EmptyInput, "word is empty");
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] < 'a' || word[i] > 'z') {
      throw Error(ErrorCode::UnencodableInput,
                  "character '" + std::string(1, word[i]) + "' at position " + std::to_string(i) +
                      " is not a lowercase Latin letter",
                  i);
    }
  }

  const auto rules = detail::consonant_rules(table);
  const auto& medial = table.medial_vowels();
  std::vector<std::string> ids;
  std::size_t i = 0;

  auto unencodable = [&](std::size_t pos) -> Error {
    return Error(ErrorCode::UnencodableInput,
                 "no rule consumes '" + std::string(word.substr(pos, 1)) + "' at position " + std::to_string(pos), pos);
  };

  if (is_latin_vowel(word[0])) {
    const DigraphRule* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& d : table.digraphs()) {
      if (d.position_constraint != DigraphPosition::WordInitial) continue;
      for (const auto& v : d.latin_values) {
        if (v.size() > best_len && word.substr(0, v.size()) == v) {
          best = &d;
          best_len = v.size();
        }
      }
    }
    if (best) {
      ids.push_back(best->jawi_pair.first);
      ids.push_back(best->jawi_pair.second);
      i = best_len;
    } else if (auto it = medial.find(word[0]); it != medial.end()) {
      ids.push_back(it->second);
      i = 1;
    } else {
      throw unencodable(0);
    }
  }

  while (i < word.size()) {
    const char c = word[i];
    if (is_latin_vowel(c)) {
      auto it = medial.find(c);
      if (it == medial.end()) throw unencodable(i);
      const bool after_consonant = i > 0 && !is_latin_vowel(word[i - 1]);
      if (!(c == 'a' && mode == SpellingMode::Traditional && after_consonant)) ids.push_back(it->second);
      ++i;
      continue;
    }
    const detail::ConsonantRule* match = nullptr;
    for (const auto& rule : rules) {
      if (word.substr(i, rule.reading.size()) == rule.reading) {
        match = &rule;
        break;
      }
    }
    if (!match) throw unencodable(i);
    ids.push_back(match->letter->id);
    i += match->reading.size();
  }
  return shape(table, std::move(ids));
}

inline ShapedText latin_to_jawi(std::string_view word, const RuleTable& table) {
  return latin_to_jawi(word, table, table.spelling_mode());
}

// ---------------------------------------------------------------------------
// Jawi -> Latin
// ---------------------------------------------------------------------------

struct TraceStep {
  enum class Kind { Digraph, Reading, Epenthesis };

  Kind kind = Kind::Reading;
  std::string rule;   // digraph id, letter id, or inserted vowel
  std::size_t index = 0;  // value / reading / epenthesis-list index

  auto operator<=>(const TraceStep&) const = default;
  bool operator==(const TraceStep&) const = default;
};

inline std::string to_string(const TraceStep& step) {
  switch (step.kind) {
    case TraceStep::Kind::Digraph: return "digraph:" + step.rule + "/" + std::to_string(step.index);
    case TraceStep::Kind::Reading: return "reading:" + step.rule + "/" + std::to_string(step.index);
    case TraceStep::Kind::Epenthesis: return "epenthesis:" + step.rule + "/" + std::to_string(step.index);
  }
  return {};
}

/// One decoding hypothesis. cost counts fallback choices plus inserted
/// vowels; rank sums the list indices of every choice and breaks ties.
struct ReadingCandidate {
  std::string latin;
  std::uint32_t cost = 0;
  std::uint32_t rank = 0;
  std::vector<TraceStep> trace;

  // 1 / (1 + cost): 1 for an all-primary reading with no insertions.
  double score() const noexcept { return 1.0 / (1.0 + cost); }
  std::size_t insertions() const noexcept {
    return static_cast<std::size_t>(std::count_if(trace.begin(), trace.end(), [](const TraceStep& s) {
      return s.kind == TraceStep::Kind::Epenthesis;
    }));
  }

  bool operator==(const ReadingCandidate&) const = default;
};

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

namespace detail {

inline bool has_consonant(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return !is_latin_vowel(c); });
}

inline bool starts_word_initial_digraph(const RuleTable& table, const std::string& id) {
  return std::any_of(table.digraphs().begin(), table.digraphs().end(), [&](const DigraphRule& d) {
    return d.position_constraint == DigraphPosition::WordInitial && d.jawi_pair.first == id;
  });
}

struct ReadingOption {
  std::string_view latin;
  std::size_t reading_index;  // into Letter::latin_readings
  std::size_t rank;           // among the options available here
};

// Readings a letter may take at a position. Vowel carriers only offer a
// vowel reading where the encoder would have written that vowel with them.
inline std::vector<ReadingOption> reading_options(const RuleTable& table, const Letter& letter, bool word_initial) {
  std::vector<ReadingOption> out;
  const bool carrier = letter.category == Category::VowelCarrier;
  const bool initial_carrier = word_initial && starts_word_initial_digraph(table, letter.id);
  for (std::size_t r = 0; r < letter.latin_readings.size(); ++r) {
    const std::string& reading = letter.latin_readings[r];
    bool allowed = true;
    if (carrier && !has_consonant(reading) && !initial_carrier) {
      if (word_initial) {
        allowed = false;
      } else {
        auto it = table.medial_vowels().find(reading.front());
        allowed = reading.size() == 1 && it != table.medial_vowels().end() && it->second == letter.id;
      }
    }
    if (allowed) out.push_back({reading, r, out.size()});
  }
  return out;
}

struct Partial {
  std::uint32_t cost = 0;
  std::uint32_t rank = 0;
  std::string output;
  std::size_t pos = 0;
  bool finished = false;
  std::vector<TraceStep> trace;

  auto key() const { return std::tie(cost, rank, output, pos, finished, trace); }
  // std::priority_queue is a max-heap; invert for min-first.
  bool operator<(const Partial& other) const { return other.key() < key(); }
};

inline bool ends_with_consonant(const std::string& s) { return !s.empty() && !is_latin_vowel(s.back()); }

}  // namespace detail

/// Ranked decodings of a sequence of letter ids.
///
/// Uniform-cost search over the reading lattice: costs are additive and
/// non-negative, so complete hypotheses leave the queue in final order
/// (cost, rank, latin) and the first hypothesis for each Latin string is
/// its best derivation. Stops after `limit` distinct strings.
inline std::vector<ReadingCandidate> jawi_to_latin(const std::vector<std::string>& letter_ids, const RuleTable& table,
                                                   std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("candidate limit must be at least 1");
  if (letter_ids.empty()) throw Error(ErrorCode::EmptyInput, "Jawi input is empty");

  std::vector<const Letter*> letters;
  letters.reserve(letter_ids.size());
  for (const auto& id : letter_ids) letters.push_back(&table.letter(id));
  const std::size_t n = letters.size();

  // Options depend only on (letter, initial?); precompute per position.
  std::vector<std::vector<detail::ReadingOption>> options(n);
  std::vector<const DigraphRule*> digraph_at(n, nullptr);
  for (std::size_t p = 0; p < n; ++p) {
    options[p] = detail::reading_options(table, *letters[p], p == 0);
    if (p + 1 < n) digraph_at[p] = table.find_digraph(letters[p]->id, letters[p + 1]->id, p == 0);
  }
  const auto& epenthesis = table.epenthesis_vowels();

  std::priority_queue<detail::Partial> queue;
  std::set<std::tuple<std::size_t, bool, std::string>> expanded;
  std::vector<ReadingCandidate> results;
  std::unordered_map<std::string, std::size_t> seen;
  queue.push(detail::Partial{});

  while (!queue.empty() && results.size() < limit) {
    detail::Partial cur = queue.top();
    queue.pop();
    if (!expanded.emplace(cur.pos, cur.finished, cur.output).second) continue;

    if (cur.finished) {
      if (seen.emplace(cur.output, results.size()).second) {
        results.push_back({cur.output, cur.cost, cur.rank, std::move(cur.trace)});
      }
      continue;
    }

    if (cur.pos == n) {
      detail::Partial done = cur;
      done.finished = true;
      queue.push(done);
      if (detail::ends_with_consonant(cur.output)) {
        for (std::size_t j = 0; j < epenthesis.size(); ++j) {
          detail::Partial ins = cur;
          ins.finished = true;
          ins.cost += 1;
          ins.rank += static_cast<std::uint32_t>(j);
          ins.output += epenthesis[j];
          ins.trace.push_back({TraceStep::Kind::Epenthesis, epenthesis[j], j});
          queue.push(std::move(ins));
        }
      }
      continue;
    }

    std::uint32_t bare_penalty = 0;
    if (const DigraphRule* d = digraph_at[cur.pos]) {
      bare_penalty = 1;
      for (std::size_t j = 0; j < d->latin_values.size(); ++j) {
        detail::Partial next = cur;
        next.cost += j > 0 ? 1 : 0;
        next.rank += static_cast<std::uint32_t>(j);
        next.output += d->latin_values[j];
        next.pos += 2;
        next.trace.push_back({TraceStep::Kind::Digraph, d->id, j});
        queue.push(std::move(next));
      }
    }

    const Letter& letter = *letters[cur.pos];
    for (const auto& opt : options[cur.pos]) {
      detail::Partial base = cur;
      base.cost += (opt.rank > 0 ? 1 : 0) + bare_penalty;
      base.rank += static_cast<std::uint32_t>(opt.rank);
      base.pos += 1;
      const bool slot = detail::ends_with_consonant(cur.output) && !is_latin_vowel(opt.latin.front());
      if (slot) {
        for (std::size_t j = 0; j < epenthesis.size(); ++j) {
          detail::Partial ins = base;
          ins.cost += 1;
          ins.rank += static_cast<std::uint32_t>(j);
          ins.output += epenthesis[j];
          ins.output += opt.latin;
          ins.trace.push_back({TraceStep::Kind::Epenthesis, epenthesis[j], j});
          ins.trace.push_back({TraceStep::Kind::Reading, letter.id, opt.reading_index});
          queue.push(std::move(ins));
        }
      }
      base.output += opt.latin;
      base.trace.push_back({TraceStep::Kind::Reading, letter.id, opt.reading_index});
      queue.push(std::move(base));
    }
  }
  return results;
}

inline std::vector<ReadingCandidate> jawi_to_latin(std::string_view jawi, const RuleTable& table, std::size_t limit) {
  if (jawi.empty()) throw Error(ErrorCode::EmptyInput, "Jawi input is empty");
  return jawi_to_latin(parse_jawi(table, jawi), table, limit);
}

inline constexpr std::size_t kMaxEnumerationLetters = 8;

/// Exhaustive, unranked candidate set by plain recursion over the decoding
/// rules. Test oracle for jawi_to_latin; capped at eight letters.
inline std::set<std::string> enumerate_all_readings(std::string_view jawi, const RuleTable& table) {
  if (jawi.empty()) throw Error(ErrorCode::EmptyInput, "Jawi input is empty");
  const std::vector<std::string> ids = parse_jawi(table, jawi);
  if (ids.size() > kMaxEnumerationLetters) {
    throw Error(ErrorCode::InputTooLong,
                std::to_string(ids.size()) + " letters exceeds the enumeration limit of " +
                    std::to_string(kMaxEnumerationLetters));
  }

  std::set<std::string> out;
  const auto& epenthesis = table.epenthesis_vowels();
  auto consonant = [](char c) { return !is_latin_vowel(c); };

  auto walk = [&](auto&& self, std::size_t pos, const std::string& text) -> void {
    if (pos == ids.size()) {
      out.insert(text);
      if (consonant(text.back())) {
        for (const auto& v : epenthesis) out.insert(text + v);
      }
      return;
    }
    const Letter& letter = table.letter(ids[pos]);
    const bool initial = pos == 0;

    if (pos + 1 < ids.size()) {
      for (const auto& d : table.digraphs()) {
        const bool placed = initial || d.position_constraint == DigraphPosition::Anywhere;
        if (placed && d.jawi_pair.first == ids[pos] && d.jawi_pair.second == ids[pos + 1]) {
          for (const auto& v : d.latin_values) self(self, pos + 2, text + v);
        }
      }
    }

    bool opens_digraph = false;
    for (const auto& d : table.digraphs()) {
      opens_digraph |= d.position_constraint == DigraphPosition::WordInitial && d.jawi_pair.first == letter.id;
    }
    for (const auto& reading : letter.latin_readings) {
      const bool vowel_only = std::none_of(reading.begin(), reading.end(), consonant);
      if (letter.category == Category::VowelCarrier && vowel_only) {
        if (initial && !opens_digraph) continue;
        if (!initial) {
          auto it = table.medial_vowels().find(reading[0]);
          if (reading.size() != 1 || it == table.medial_vowels().end() || it->second != letter.id) continue;
        }
      }
      if (!text.empty() && consonant(text.back()) && consonant(reading.front())) {
        for (const auto& v : epenthesis) self(self, pos + 1, text + v + reading);
      }
      self(self, pos + 1, text + reading);
    }
  };
  walk(walk, 0, std::string{});
  return out;
}

/// Re-applies a derivation trace to the source letters. Throws
/// InvalidTrace when the trace does not fit the input.
inline std::string replay_trace(const RuleTable& table, const std::vector<std::string>& letter_ids,
                                const std::vector<TraceStep>& trace) {
  std::string out;
  std::size_t pos = 0;
  auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidTrace, why); };
  for (const auto& step : trace) {
    switch (step.kind) {
      case TraceStep::Kind::Digraph: {
        if (pos + 1 >= letter_ids.size()) throw bad("digraph step past end of input");
        const DigraphRule* d = table.find_digraph(letter_ids[pos], letter_ids[pos + 1], pos == 0);
        if (!d || d->id != step.rule) throw bad("digraph '" + step.rule + "' does not apply here");
        if (step.index >= d->latin_values.size()) throw bad("digraph value index out of range");
        out += d->latin_values[step.index];
        pos += 2;
        break;
      }
      case TraceStep::Kind::Reading: {
        if (pos >= letter_ids.size() || letter_ids[pos] != step.rule) {
          throw bad("reading step for '" + step.rule + "' does not match the input");
        }
        const Letter& l = table.letter(step.rule);
        if (step.index >= l.latin_readings.size()) throw bad("reading index out of range");
        out += l.latin_readings[step.index];
        pos += 1;
        break;
      }
      case TraceStep::Kind::Epenthesis: {
        const auto& vowels = table.epenthesis_vowels();
        if (step.index >= vowels.size() || vowels[step.index] != step.rule) {
          throw bad("unknown epenthesis vowel '" + step.rule + "'");
        }
        out += step.rule;
        break;
      }
    }
  }
  if (pos != letter_ids.size()) throw bad("trace does not consume the whole input");
  return out;
}

}  // namespace jawi
