#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jawi/corpus.hpp"
#include "jawi/letter.hpp"
#include "jawi/ruleset.hpp"
#include "jawi/shaping.hpp"
#include "jawi/utf8.hpp"

namespace jawi {

// Reference row for one letter, as shown by `letters` and GET /api/letters.
struct LetterInfo {
  const Letter* letter = nullptr;
  std::string glyph;
  std::optional<std::string> example_latin;
  std::optional<std::string> example_jawi;
};

namespace detail {

// Prefer normative words that start with the letter.
inline int example_rank(const CorpusEntry& e, const std::vector<std::string>& ids, const std::string& id) {
  const bool starts = !ids.empty() && ids.front() == id;
  const bool contains = std::find(ids.begin(), ids.end(), id) != ids.end();
  if (!contains) return -1;
  return (e.status == EntryStatus::Normative ? 2 : 0) + (starts ? 1 : 0);
}

}  // namespace detail

inline std::vector<LetterInfo> letter_catalog(const RuleTable& table, const std::vector<CorpusEntry>& corpus) {
  std::vector<std::vector<std::string>> parsed;
  for (const auto& e : corpus) {
    try {
      parsed.push_back(parse_jawi(table, e.jawi));
    } catch (const Error&) {
      parsed.emplace_back();
    }
  }
  std::vector<LetterInfo> out;
  for (const auto& l : table.letters()) {
    LetterInfo info{&l, utf8::encode(l.codepoint), std::nullopt, std::nullopt};
    int best = -1;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const int rank = detail::example_rank(corpus[i], parsed[i], l.id);
      if (rank > best) {
        best = rank;
        info.example_latin = corpus[i].latin;
        info.example_jawi = corpus[i].jawi;
      }
    }
    out.push_back(std::move(info));
  }
  return out;
}

inline nlohmann::json to_json(const LetterInfo& info) {
  using nlohmann::json;
  const Letter& l = *info.letter;
  json forms = json::object();
  for (auto f : kAllForms) forms[std::string(to_string(f))] = l.has_form(f);
  json j = {{"id", l.id},
            {"glyph", info.glyph},
            {"codepoint", RuleTable::format_codepoint(l.codepoint)},
            {"display_name", l.display_name},
            {"joining", to_string(l.joining)},
            {"joins_left", l.joins_left()},
            {"category", to_string(l.category)},
            {"readings", l.latin_readings},
            {"forms", std::move(forms)}};
  j["example"] = info.example_latin ? json{{"latin", *info.example_latin}, {"jawi", *info.example_jawi}} : json(nullptr);
  if (l.note) j["note"] = *l.note;
  return j;
}

}  // namespace jawi
