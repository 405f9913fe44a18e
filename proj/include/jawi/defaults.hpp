#pragma once

#include <vector>

#include "jawi/corpus.hpp"
#include "jawi/embedded_data.hpp"
#include "jawi/ruleset.hpp"

namespace jawi {

// Shipped rule table and corpus, compiled in from data/*.json.
inline const RuleTable& default_rule_table() {
  static const RuleTable table = load_rule_table(embedded::kRulesJson);
  return table;
}

inline const std::vector<CorpusEntry>& default_corpus() {
  static const std::vector<CorpusEntry> corpus = load_corpus(embedded::kCorpusJson);
  return corpus;
}

}  // namespace jawi
