#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jawi {

// Whether a letter connects to the letter that follows it. Every letter
// connects to its predecessor when the predecessor allows it.
enum class JoiningClass { DualJoining, RightJoiningOnly };

enum class Category { VowelCarrier, Consonant, ExtendedJawi };

// Declaration order is the serialization order.
enum class PositionalForm { Isolated, Initial, Medial, Final };

inline constexpr std::array<PositionalForm, 4> kAllForms = {
    PositionalForm::Isolated, PositionalForm::Initial, PositionalForm::Medial,
    PositionalForm::Final};

enum class SpellingMode { Plene, Traditional };

struct Letter {
  std::string id;
  char32_t codepoint = 0;
  std::string display_name;
  JoiningClass joining = JoiningClass::DualJoining;
  Category category = Category::Consonant;
  // Primary reading first; order is the decoder's ranking priority.
  std::vector<std::string> latin_readings;
  std::optional<std::string> note;

  bool joins_left() const noexcept { return joining == JoiningClass::DualJoining; }
  const std::string& primary_reading() const { return latin_readings.front(); }

  // Right-joining letters only have isolated and final shapes.
  bool has_form(PositionalForm form) const noexcept {
    return joins_left() || form == PositionalForm::Isolated || form == PositionalForm::Final;
  }

  bool operator==(const Letter&) const = default;
};

inline constexpr std::string_view to_string(JoiningClass c) noexcept {
  return c == JoiningClass::DualJoining ? "dual" : "right";
}

inline constexpr std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::VowelCarrier: return "vowel-carrier";
    case Category::Consonant: return "consonant";
    case Category::ExtendedJawi: return "extended";
  }
  return "";
}

inline constexpr std::string_view to_string(PositionalForm f) noexcept {
  switch (f) {
    case PositionalForm::Isolated: return "isolated";
    case PositionalForm::Initial: return "initial";
    case PositionalForm::Medial: return "medial";
    case PositionalForm::Final: return "final";
  }
  return "";
}

inline constexpr std::string_view to_string(SpellingMode m) noexcept {
  return m == SpellingMode::Plene ? "plene" : "traditional";
}

inline std::optional<JoiningClass> parse_joining(std::string_view s) {
  if (s == "dual") return JoiningClass::DualJoining;
  if (s == "right") return JoiningClass::RightJoiningOnly;
  return std::nullopt;
}

inline std::optional<Category> parse_category(std::string_view s) {
  if (s == "vowel-carrier") return Category::VowelCarrier;
  if (s == "consonant") return Category::Consonant;
  if (s == "extended") return Category::ExtendedJawi;
  return std::nullopt;
}

inline std::optional<PositionalForm> parse_form(std::string_view s) {
  for (auto f : kAllForms) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

inline std::optional<SpellingMode> parse_mode(std::string_view s) {
  if (s == "plene") return SpellingMode::Plene;
  if (s == "traditional") return SpellingMode::Traditional;
  return std::nullopt;
}

inline constexpr bool is_latin_vowel(char c) noexcept {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace jawi
