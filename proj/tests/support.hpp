#pragma once

#include <string>
#include <vector>

#include "jawi/jawi.hpp"

namespace jawi::testing {

inline const RuleTable& table() { return default_rule_table(); }

inline const RuleTable& traditional() {
  static const RuleTable t = default_rule_table().with_mode(SpellingMode::Traditional);
  return t;
}

inline std::string encode(std::string_view word, SpellingMode mode = SpellingMode::Plene) {
  return render_logical(table(), latin_to_jawi(word, table(), mode));
}

inline std::vector<std::string> latins(const std::vector<ReadingCandidate>& candidates) {
  std::vector<std::string> out;
  for (const auto& c : candidates) out.push_back(c.latin);
  return out;
}

// All sequences of length 1..max_len over `alphabet`, shortest first.
inline std::vector<std::vector<std::string>> sequences(const std::vector<std::string>& alphabet, std::size_t max_len) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::vector<std::string>> layer = {{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : layer) {
      for (const auto& a : alphabet) {
        auto s = prefix;
        s.push_back(a);
        next.push_back(s);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline std::string jawi_of(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) utf8::append(out, table().letter(id).codepoint);
  return out;
}

}  // namespace jawi::testing
