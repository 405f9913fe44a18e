#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jawi/error.hpp"
#include "jawi/letter.hpp"
#include "jawi/ruleset.hpp"
#include "jawi/utf8.hpp"

namespace jawi {

/// Contextual form of each letter from the joining classes alone.
///
/// A letter joins left when it is dual-joining and not last; it joins
/// right when its predecessor joins left. Neither gives Isolated, left only
/// Initial, right only Final, both Medial. Right-joining letters therefore
/// restart the cursive run and take the initial shape rule for the next
/// letter.
inline std::vector<PositionalForm> resolve_positions(std::span<const JoiningClass> classes) {
  std::vector<PositionalForm> forms;
  forms.reserve(classes.size());
  bool prev_joins_left = false;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const bool left = classes[i] == JoiningClass::DualJoining && i + 1 < classes.size();
    const bool right = prev_joins_left;
    if (left && right) {
      forms.push_back(PositionalForm::Medial);
    } else if (left) {
      forms.push_back(PositionalForm::Initial);
    } else if (right) {
      forms.push_back(PositionalForm::Final);
    } else {
      forms.push_back(PositionalForm::Isolated);
    }
    prev_joins_left = left;
  }
  return forms;
}

inline std::vector<PositionalForm> resolve_positions(const RuleTable& table,
                                                     std::span<const std::string> letter_ids) {
  std::vector<JoiningClass> classes;
  classes.reserve(letter_ids.size());
  for (const auto& id : letter_ids) classes.push_back(table.letter(id).joining);
  return resolve_positions(std::span<const JoiningClass>(classes));
}

/// Letter ids in logical (reading) order with their resolved forms.
struct ShapedText {
  std::vector<std::string> letters;
  std::vector<PositionalForm> forms;

  bool empty() const noexcept { return letters.empty(); }
  bool operator==(const ShapedText&) const = default;
};

inline ShapedText shape(const RuleTable& table, std::vector<std::string> letter_ids) {
  auto forms = resolve_positions(table, letter_ids);
  return ShapedText{std::move(letter_ids), std::move(forms)};
}

/// Logical-order UTF-8 of the base letters. No presentation forms or
/// joiner controls are emitted; glyph selection belongs to the renderer.
inline std::string render_logical(const RuleTable& table, const ShapedText& shaped) {
  std::string out;
  for (const auto& id : shaped.letters) utf8::append(out, table.letter(id).codepoint);
  return out;
}

/// Maps logical-order Jawi text to letter ids. Fails with UnknownCodepoint
/// (position = code point index) on anything outside the table.
inline std::vector<std::string> parse_jawi(const RuleTable& table, std::string_view text) {
  std::u32string cps;
  try {
    cps = utf8::decode(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::UnknownCodepoint, "input is not valid UTF-8", e.position());
  }
  std::vector<std::string> ids;
  ids.reserve(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const Letter* l = table.find(cps[i]);
    if (!l) {
      throw Error(ErrorCode::UnknownCodepoint,
                  RuleTable::format_codepoint(cps[i]) + " at position " + std::to_string(i) +
                      " is not a letter of the rule table",
                  i);
    }
    ids.push_back(l->id);
  }
  return ids;
}

}  // namespace jawi
