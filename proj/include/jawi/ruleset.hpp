#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "jawi/error.hpp"
#include "jawi/letter.hpp"
#include "jawi/utf8.hpp"

namespace jawi {

enum class DigraphPosition { WordInitial, Anywhere };

inline constexpr std::string_view to_string(DigraphPosition p) noexcept {
  return p == DigraphPosition::WordInitial ? "word-initial" : "anywhere";
}

struct DigraphRule {
  std::string id;
  std::pair<std::string, std::string> jawi_pair;
  DigraphPosition position_constraint = DigraphPosition::WordInitial;
  std::vector<std::string> latin_values;
  std::optional<std::string> note;

  bool operator==(const DigraphRule&) const = default;
};

/// Immutable, validated rule set. Construct through RuleTable::build or
/// load_rule_table; every instance satisfies the table invariants.
class RuleTable {
 public:
  static RuleTable build(std::string version, std::vector<Letter> letters,
                         std::vector<DigraphRule> digraphs,
                         std::map<char, std::string> medial_vowels,
                         std::vector<std::string> epenthesis, SpellingMode mode) {
    RuleTable t;
    t.version_ = std::move(version);
    t.letters_ = std::move(letters);
    t.digraphs_ = std::move(digraphs);
    t.medial_vowels_ = std::move(medial_vowels);
    t.epenthesis_ = std::move(epenthesis);
    t.mode_ = mode;
    t.validate_and_index();
    return t;
  }

  const std::string& version() const noexcept { return version_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  const std::vector<DigraphRule>& digraphs() const noexcept { return digraphs_; }
  const std::map<char, std::string>& medial_vowels() const noexcept { return medial_vowels_; }
  const std::vector<std::string>& epenthesis_vowels() const noexcept { return epenthesis_; }
  SpellingMode spelling_mode() const noexcept { return mode_; }

  // id -> note for every letter and digraph that carries a curation note.
  std::map<std::string, std::string> provenance_notes() const {
    std::map<std::string, std::string> notes;
    for (const auto& l : letters_) {
      if (l.note) notes.emplace(l.id, *l.note);
    }
    for (const auto& d : digraphs_) {
      if (d.note) notes.emplace(d.id, *d.note);
    }
    return notes;
  }

  RuleTable with_mode(SpellingMode mode) const {
    RuleTable copy = *this;
    copy.mode_ = mode;
    return copy;
  }

  const Letter* find(std::string_view id) const noexcept {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &letters_[it->second];
  }

  const Letter* find(char32_t codepoint) const noexcept {
    auto it = by_codepoint_.find(codepoint);
    return it == by_codepoint_.end() ? nullptr : &letters_[it->second];
  }

  const Letter& letter(std::string_view id) const {
    if (const Letter* l = find(id)) return *l;
    throw Error(ErrorCode::UnknownLetter, "no letter with id '" + std::string(id) + "'");
  }

  const Letter& letter(char32_t codepoint) const {
    if (const Letter* l = find(codepoint)) return *l;
    throw Error(ErrorCode::UnknownLetter, "no letter with codepoint " + format_codepoint(codepoint));
  }

  // Position of a letter in table order; used for deterministic tie-breaks.
  std::size_t index_of(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) {
      throw Error(ErrorCode::UnknownLetter, "no letter with id '" + std::string(id) + "'");
    }
    return it->second;
  }

  // Digraph rule for a letter pair at the given position, if any.
  const DigraphRule* find_digraph(std::string_view first, std::string_view second,
                                  bool word_initial) const noexcept {
    for (const auto& d : digraphs_) {
      if (!word_initial && d.position_constraint == DigraphPosition::WordInitial) continue;
      if (d.jawi_pair.first == first && d.jawi_pair.second == second) return &d;
    }
    return nullptr;
  }

  static std::string format_codepoint(char32_t cp) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string digits;
    for (char32_t v = cp; v != 0; v >>= 4) digits.insert(digits.begin(), kHex[v & 0xF]);
    while (digits.size() < 4) digits.insert(digits.begin(), '0');
    return "U+" + digits;
  }

  bool operator==(const RuleTable& other) const {
    return version_ == other.version_ && letters_ == other.letters_ &&
           digraphs_ == other.digraphs_ && medial_vowels_ == other.medial_vowels_ &&
           epenthesis_ == other.epenthesis_ && mode_ == other.mode_;
  }

 private:
  RuleTable() = default;

  static bool is_reading(std::string_view s) {
    return !s.empty() && s.size() <= 4 &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
  }

  [[noreturn]] static void fail(const std::string& rule, const std::string& reason) {
    throw Error(ErrorCode::ValidationError, rule + ": " + reason);
  }

  void validate_and_index() {
    static const std::regex kSemver(R"(^(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)(-[0-9A-Za-z.-]+)?$)");
    static const std::regex kId(R"(^[a-z][a-z0-9_]*$)");
    if (!std::regex_match(version_, kSemver)) fail("version", "'" + version_ + "' is not a semantic version");
    if (letters_.empty()) fail("letters", "table has no letters");

    std::set<std::string> carriers;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      Letter& l = letters_[i];
      const std::string rule = "letter '" + l.id + "'";
      if (!std::regex_match(l.id, kId)) fail(rule, "id must match [a-z][a-z0-9_]*");
      if (l.codepoint == 0 || l.codepoint > 0x10FFFF || (l.codepoint >= 0xD800 && l.codepoint <= 0xDFFF)) {
        fail(rule, "codepoint is not a Unicode scalar value");
      }
      if (l.latin_readings.empty()) fail(rule, "latin readings must not be empty");
      std::set<std::string> seen;
      for (const auto& r : l.latin_readings) {
        if (!is_reading(r)) fail(rule, "reading '" + r + "' must match [a-z]{1,4}");
        if (!seen.insert(r).second) fail(rule, "duplicate reading '" + r + "'");
      }
      if (!by_id_.emplace(l.id, i).second) fail(rule, "duplicate id");
      if (!by_codepoint_.emplace(l.codepoint, i).second) {
        fail(rule, "duplicate codepoint " + format_codepoint(l.codepoint));
      }
      if (l.display_name.empty()) {
        l.display_name = l.id;
        l.display_name[0] = static_cast<char>(l.display_name[0] - 'a' + 'A');
      }
      if (l.category == Category::VowelCarrier) carriers.insert(l.id);
    }
    if (carriers != std::set<std::string>{"alif", "waw", "ya"}) {
      fail("letters", "vowel-carrier category must apply exactly to alif, waw and ya");
    }

    std::set<std::string> digraph_ids;
    for (const auto& d : digraphs_) {
      const std::string rule = "digraph '" + d.id + "'";
      if (d.id.empty()) fail("digraphs", "digraph id must not be empty");
      if (!digraph_ids.insert(d.id).second) fail(rule, "duplicate id");
      for (const auto* member : {&d.jawi_pair.first, &d.jawi_pair.second}) {
        if (!find(*member)) fail(rule, "references unknown letter '" + *member + "'");
      }
      if (d.latin_values.empty()) fail(rule, "latin values must not be empty");
      for (const auto& v : d.latin_values) {
        if (!is_reading(v) || !std::all_of(v.begin(), v.end(), is_latin_vowel)) {
          fail(rule, "value '" + v + "' must be a vowel string of 1-4 letters");
        }
      }
    }

    for (const auto& [vowel, id] : medial_vowels_) {
      const std::string rule = std::string("medial vowel '") + vowel + "'";
      if (!is_latin_vowel(vowel)) fail(rule, "key must be one of a, e, i, o, u");
      if (!find(id)) fail(rule, "references unknown letter '" + id + "'");
    }

    std::set<std::string> seen;
    for (const auto& v : epenthesis_) {
      if (v.size() != 1 || !is_latin_vowel(v[0])) fail("epenthesis", "'" + v + "' is not a single Latin vowel");
      if (!seen.insert(v).second) fail("epenthesis", "duplicate vowel '" + v + "'");
    }
  }

  std::string version_;
  std::vector<Letter> letters_;
  std::vector<DigraphRule> digraphs_;
  std::map<char, std::string> medial_vowels_;
  std::vector<std::string> epenthesis_;
  SpellingMode mode_ = SpellingMode::Plene;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<char32_t, std::size_t> by_codepoint_;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& field, const std::string& reason) {
  throw Error(ErrorCode::ParseError, field + ": " + reason);
}

inline void reject_unknown_keys(const json& obj, const std::string& field,
                                std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      parse_fail(field, "unknown key '" + item.key() + "'");
    }
  }
}

inline const json& require(const json& obj, const char* key, const std::string& rule) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::ValidationError, rule + ": missing '" + key + "'");
  return *it;
}

inline std::string as_string(const json& v, const std::string& field) {
  if (!v.is_string()) parse_fail(field, "expected a string");
  return v.get<std::string>();
}

inline std::vector<std::string> as_string_list(const json& v, const std::string& field) {
  if (!v.is_array()) parse_fail(field, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what(), e.byte);
  }
}

inline char32_t parse_codepoint(const std::string& s, const std::string& field) {
  static const std::regex kCodepoint(R"(^U\+([0-9A-F]{4,6})$)");
  std::smatch m;
  if (!std::regex_match(s, m, kCodepoint)) parse_fail(field, "codepoint '" + s + "' must look like U+XXXX");
  return static_cast<char32_t>(std::stoul(m[1].str(), nullptr, 16));
}

}  // namespace detail

inline RuleTable load_rule_table(std::string_view text) {
  using detail::json;
  const json doc = detail::parse_json_text(text);
  if (!doc.is_object()) detail::parse_fail("$", "rule file must be a JSON object");
  detail::reject_unknown_keys(doc, "$", {"version", "letters", "digraphs", "medial_vowels", "epenthesis", "mode"});

  const std::string version = detail::as_string(detail::require(doc, "version", "table"), "version");

  const json& jletters = detail::require(doc, "letters", "table");
  if (!jletters.is_array()) detail::parse_fail("letters", "expected an array");
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < jletters.size(); ++i) {
    const json& jl = jletters[i];
    const std::string field = "letters[" + std::to_string(i) + "]";
    if (!jl.is_object()) detail::parse_fail(field, "expected an object");
    detail::reject_unknown_keys(jl, field, {"id", "codepoint", "joining", "category", "readings", "note"});
    Letter l;
    l.id = detail::as_string(detail::require(jl, "id", field), field + ".id");
    const std::string rule = "letter '" + l.id + "'";
    l.codepoint = detail::parse_codepoint(
        detail::as_string(detail::require(jl, "codepoint", rule), field + ".codepoint"), field + ".codepoint");
    const auto joining = detail::as_string(detail::require(jl, "joining", rule), field + ".joining");
    if (auto j = parse_joining(joining)) {
      l.joining = *j;
    } else {
      throw Error(ErrorCode::ValidationError, rule + ": unknown joining class '" + joining + "'");
    }
    const auto category = detail::as_string(detail::require(jl, "category", rule), field + ".category");
    if (auto c = parse_category(category)) {
      l.category = *c;
    } else {
      throw Error(ErrorCode::ValidationError, rule + ": unknown category '" + category + "'");
    }
    l.latin_readings = detail::as_string_list(detail::require(jl, "readings", rule), field + ".readings");
    if (auto it = jl.find("note"); it != jl.end()) l.note = detail::as_string(*it, field + ".note");
    letters.push_back(std::move(l));
  }

  std::vector<DigraphRule> digraphs;
  if (auto it = doc.find("digraphs"); it != doc.end()) {
    if (!it->is_array()) detail::parse_fail("digraphs", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& jd = (*it)[i];
      const std::string field = "digraphs[" + std::to_string(i) + "]";
      if (!jd.is_object()) detail::parse_fail(field, "expected an object");
      detail::reject_unknown_keys(jd, field, {"id", "pair", "position", "values", "note"});
      DigraphRule d;
      d.id = detail::as_string(detail::require(jd, "id", field), field + ".id");
      const std::string rule = "digraph '" + d.id + "'";
      const auto pair = detail::as_string_list(detail::require(jd, "pair", rule), field + ".pair");
      if (pair.size() != 2) throw Error(ErrorCode::ValidationError, rule + ": pair must have exactly two letters");
      d.jawi_pair = {pair[0], pair[1]};
      const auto position = detail::as_string(detail::require(jd, "position", rule), field + ".position");
      if (position == "word-initial") {
        d.position_constraint = DigraphPosition::WordInitial;
      } else if (position == "anywhere") {
        d.position_constraint = DigraphPosition::Anywhere;
      } else {
        throw Error(ErrorCode::ValidationError, rule + ": unknown position '" + position + "'");
      }
      d.latin_values = detail::as_string_list(detail::require(jd, "values", rule), field + ".values");
      if (auto n = jd.find("note"); n != jd.end()) d.note = detail::as_string(*n, field + ".note");
      digraphs.push_back(std::move(d));
    }
  }

  std::map<char, std::string> medial;
  if (auto it = doc.find("medial_vowels"); it != doc.end()) {
    if (!it->is_object()) detail::parse_fail("medial_vowels", "expected an object");
    for (const auto& item : it->items()) {
      if (item.key().size() != 1) {
        throw Error(ErrorCode::ValidationError, "medial vowel '" + item.key() + "': key must be a single vowel");
      }
      medial.emplace(item.key()[0], detail::as_string(item.value(), "medial_vowels." + item.key()));
    }
  }

  std::vector<std::string> epenthesis{"a", "e"};
  if (auto it = doc.find("epenthesis"); it != doc.end()) epenthesis = detail::as_string_list(*it, "epenthesis");

  SpellingMode mode = SpellingMode::Plene;
  if (auto it = doc.find("mode"); it != doc.end()) {
    const auto m = detail::as_string(*it, "mode");
    if (auto parsed = parse_mode(m)) {
      mode = *parsed;
    } else {
      throw Error(ErrorCode::ValidationError, "mode: unknown spelling mode '" + m + "'");
    }
  }

  return RuleTable::build(version, std::move(letters), std::move(digraphs), std::move(medial),
                          std::move(epenthesis), mode);
}

inline RuleTable load_rule_table(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_rule_table(std::string_view(text));
}

/// Inverse of load_rule_table; display names are derived and not stored.
inline nlohmann::json to_json(const RuleTable& table) {
  using nlohmann::json;
  json letters = json::array();
  for (const auto& l : table.letters()) {
    json jl = {{"id", l.id},
               {"codepoint", RuleTable::format_codepoint(l.codepoint)},
               {"joining", to_string(l.joining)},
               {"category", to_string(l.category)},
               {"readings", l.latin_readings}};
    if (l.note) jl["note"] = *l.note;
    letters.push_back(std::move(jl));
  }
  json digraphs = json::array();
  for (const auto& d : table.digraphs()) {
    json jd = {{"id", d.id},
               {"pair", {d.jawi_pair.first, d.jawi_pair.second}},
               {"position", to_string(d.position_constraint)},
               {"values", d.latin_values}};
    if (d.note) jd["note"] = *d.note;
    digraphs.push_back(std::move(jd));
  }
  json medial = json::object();
  for (const auto& [vowel, id] : table.medial_vowels()) medial[std::string(1, vowel)] = id;
  return json{{"version", table.version()},          {"mode", to_string(table.spelling_mode())},
              {"letters", std::move(letters)},       {"digraphs", std::move(digraphs)},
              {"medial_vowels", std::move(medial)},  {"epenthesis", table.epenthesis_vowels()}};
}

inline std::string serialize_rule_table(const RuleTable& table) { return to_json(table).dump(2); }

// Free-function lookups mirroring the table members.
inline const Letter& lookup_letter(const RuleTable& table, std::string_view id) { return table.letter(id); }
inline const Letter& lookup_letter(const RuleTable& table, char32_t codepoint) { return table.letter(codepoint); }

}  // namespace jawi
