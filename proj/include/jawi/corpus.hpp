#pragma once

#include <algorithm>
#include <istream>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "jawi/error.hpp"
#include "jawi/ruleset.hpp"
#include "jawi/shaping.hpp"
#include "jawi/transliterate.hpp"

namespace jawi {

enum class EntryStatus { Normative, Suspect };

inline constexpr std::string_view to_string(EntryStatus s) noexcept {
  return s == EntryStatus::Normative ? "normative" : "suspect";
}

struct CorpusEntry {
  std::string latin;
  std::string jawi;  // logical order
  std::string source;
  EntryStatus status = EntryStatus::Normative;
  SpellingMode mode = SpellingMode::Plene;
  std::optional<std::string> note;

  bool operator==(const CorpusEntry&) const = default;
};

inline std::vector<CorpusEntry> load_corpus(std::string_view text) {
  using nlohmann::json;
  const json doc = detail::parse_json_text(text);
  if (!doc.is_array()) detail::parse_fail("$", "corpus must be a JSON array");

  std::vector<CorpusEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& je = doc[i];
    const std::string field = "[" + std::to_string(i) + "]";
    if (!je.is_object()) detail::parse_fail(field, "expected an object");
    detail::reject_unknown_keys(je, field, {"latin", "jawi", "source", "status", "mode", "note"});
    CorpusEntry e;
    e.latin = detail::as_string(detail::require(je, "latin", "entry " + field), field + ".latin");
    const std::string rule = "entry '" + e.latin + "'";
    e.jawi = detail::as_string(detail::require(je, "jawi", rule), field + ".jawi");
    e.source = detail::as_string(detail::require(je, "source", rule), field + ".source");
    const auto status = detail::as_string(detail::require(je, "status", rule), field + ".status");
    const auto mode = detail::as_string(detail::require(je, "mode", rule), field + ".mode");
    if (auto it = je.find("note"); it != je.end()) e.note = detail::as_string(*it, field + ".note");

    auto invalid = [&](const std::string& why) { return Error(ErrorCode::ValidationError, rule + ": " + why, i); };
    if (e.latin.empty()) throw invalid("latin is empty");
    if (e.jawi.empty()) throw invalid("jawi is empty");
    if (status == "normative") {
      e.status = EntryStatus::Normative;
    } else if (status == "suspect") {
      e.status = EntryStatus::Suspect;
    } else {
      throw invalid("unknown status '" + status + "'");
    }
    if (auto m = parse_mode(mode)) {
      e.mode = *m;
    } else {
      throw invalid("unknown mode '" + mode + "'");
    }
    if (e.status == EntryStatus::Suspect && (!e.note || e.note->empty())) throw invalid("suspect entries need a note");
    if (!seen.emplace(e.latin, e.jawi).second) throw invalid("duplicate entry");
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::vector<CorpusEntry> load_corpus(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_corpus(std::string_view(text));
}

struct EntryCheck {
  const CorpusEntry* entry = nullptr;
  bool encodes = false;        // encoder output in the entry's mode equals jawi
  bool decodes = false;        // latin is among the untruncated decodings
  std::string encoded;         // encoder output, empty on error
  std::optional<std::string> error;

  bool passed() const noexcept { return encodes && decodes; }
  // Suspect entries are informational.
  bool blocking_failure() const noexcept { return entry->status == EntryStatus::Normative && !passed(); }
};

struct CorpusReport {
  std::vector<EntryCheck> checks;

  std::size_t normative_total() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const EntryCheck& c) {
      return c.entry->status == EntryStatus::Normative;
    }));
  }
  std::size_t normative_passed() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const EntryCheck& c) {
      return c.entry->status == EntryStatus::Normative && c.passed();
    }));
  }
  bool ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const EntryCheck& c) { return c.blocking_failure(); });
  }
};

/// Runs both checks on every entry. The report borrows `entries`.
inline CorpusReport verify_corpus(const std::vector<CorpusEntry>& entries, const RuleTable& table) {
  CorpusReport report;
  for (const auto& e : entries) {
    EntryCheck check;
    check.entry = &e;
    try {
      check.encoded = render_logical(table, latin_to_jawi(e.latin, table, e.mode));
      check.encodes = check.encoded == e.jawi;
    } catch (const Error& err) {
      check.error = err.what();
    }
    try {
      const auto candidates = jawi_to_latin(e.jawi, table, kUnlimited);
      check.decodes = std::any_of(candidates.begin(), candidates.end(),
                                  [&](const ReadingCandidate& c) { return c.latin == e.latin; });
    } catch (const Error& err) {
      if (!check.error) check.error = err.what();
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

inline nlohmann::json to_json(const CorpusReport& report) {
  using nlohmann::json;
  json entries = json::array();
  for (const auto& c : report.checks) {
    json j = {{"latin", c.entry->latin},   {"jawi", c.entry->jawi},
              {"status", to_string(c.entry->status)}, {"mode", to_string(c.entry->mode)},
              {"encodes", c.encodes},      {"decodes", c.decodes},
              {"encoded", c.encoded}};
    if (c.error) j["error"] = *c.error;
    entries.push_back(std::move(j));
  }
  return json{{"ok", report.ok()},
              {"normative_total", report.normative_total()},
              {"normative_passed", report.normative_passed()},
              {"entries", std::move(entries)}};
}

}  // namespace jawi
