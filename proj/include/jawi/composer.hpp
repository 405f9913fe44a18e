#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "jawi/error.hpp"
#include "jawi/letter.hpp"
#include "jawi/ruleset.hpp"
#include "jawi/shaping.hpp"

namespace jawi {

struct OfferedReading {
  std::string latin;
  // True for a digraph value offered because the letter follows an alif
  // that opens a word-initial digraph.
  bool digraph = false;

  bool operator==(const OfferedReading&) const = default;
};

struct CommittedLetter {
  std::string letter;
  std::string reading;
  PositionalForm filter = PositionalForm::Isolated;  // learner's pick, not the shaped form
  bool digraph = false;  // reading is a digraph value fused with the previous alif

  bool operator==(const CommittedLetter&) const = default;
};

struct PendingSelection {
  std::string letter;
  PositionalForm form = PositionalForm::Isolated;
  std::vector<OfferedReading> offered;
  std::optional<std::size_t> chosen;

  bool operator==(const PendingSelection&) const = default;
};

struct ComposerSnapshot {
  std::vector<CommittedLetter> committed;
  std::optional<PendingSelection> pending;
  PositionalForm filter = PositionalForm::Isolated;

  bool operator==(const ComposerSnapshot&) const = default;
};

struct ComposerState {
  std::vector<CommittedLetter> committed;
  std::optional<PendingSelection> pending;
  PositionalForm filter = PositionalForm::Isolated;
  // One snapshot per Process, taken just before the commit.
  std::vector<ComposerSnapshot> history;

  bool empty() const noexcept { return committed.empty() && !pending && history.empty(); }
  bool operator==(const ComposerState&) const = default;
};

namespace event {
struct SetFilter { PositionalForm form; };
struct PickLetter { std::string letter; };
struct PickReading { std::size_t index; };
struct Process {};
struct NewWord {};
struct Undo {};
}  // namespace event

using ComposerEvent = std::variant<event::SetFilter, event::PickLetter, event::PickReading, event::Process,
                                   event::NewWord, event::Undo>;

/// Readings the picker offers for `letter_id` given what is already
/// committed: the letter's own readings, then digraph values when it
/// completes a digraph with the previous letter.
inline std::vector<OfferedReading> offered_readings(const RuleTable& table,
                                                    const std::vector<CommittedLetter>& committed,
                                                    std::string_view letter_id) {
  const Letter& letter = table.letter(letter_id);
  std::vector<OfferedReading> offered;
  for (const auto& r : letter.latin_readings) offered.push_back({r, false});
  if (!committed.empty() && !committed.back().digraph) {
    const bool initial = committed.size() == 1;
    if (const DigraphRule* d = table.find_digraph(committed.back().letter, letter.id, initial)) {
      for (const auto& v : d->latin_values) offered.push_back({v, true});
    }
  }
  return offered;
}

inline ComposerState apply_event(const ComposerState& state, const ComposerEvent& ev, const RuleTable& table) {
  ComposerState next = state;
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, event::SetFilter>) {
          next.filter = e.form;
          next.pending.reset();
        } else if constexpr (std::is_same_v<E, event::PickLetter>) {
          next.pending = PendingSelection{table.letter(e.letter).id, next.filter,
                                          offered_readings(table, next.committed, e.letter), std::nullopt};
        } else if constexpr (std::is_same_v<E, event::PickReading>) {
          if (!next.pending) throw Error(ErrorCode::NoPendingSelection, "pick a letter first");
          if (e.index >= next.pending->offered.size()) {
            throw Error(ErrorCode::ReadingIndexOutOfRange,
                        "reading " + std::to_string(e.index) + " of " +
                            std::to_string(next.pending->offered.size()) + " offered",
                        e.index);
          }
          next.pending->chosen = e.index;
        } else if constexpr (std::is_same_v<E, event::Process>) {
          if (!next.pending) throw Error(ErrorCode::NoPendingSelection, "nothing to process");
          if (!next.pending->chosen) throw Error(ErrorCode::NoReadingChosen, "choose a Latin reading first");
          next.history.push_back(ComposerSnapshot{state.committed, state.pending, state.filter});
          const auto& pick = next.pending->offered[*next.pending->chosen];
          next.committed.push_back({next.pending->letter, pick.latin, next.pending->form, pick.digraph});
          next.pending.reset();
        } else if constexpr (std::is_same_v<E, event::NewWord>) {
          next = ComposerState{};
        } else if constexpr (std::is_same_v<E, event::Undo>) {
          if (!next.history.empty()) {
            ComposerSnapshot snap = std::move(next.history.back());
            next.history.pop_back();
            next.committed = std::move(snap.committed);
            next.pending = std::move(snap.pending);
            next.filter = snap.filter;
          }
        }
      },
      ev);
  return next;
}

inline ComposerState replay(const std::vector<ComposerEvent>& events, const RuleTable& table,
                            ComposerState state = {}) {
  for (const auto& e : events) state = apply_event(state, e, table);
  return state;
}

struct ComposerRender {
  std::string jawi;
  std::string latin;
  std::vector<PositionalForm> forms;

  bool operator==(const ComposerRender&) const = default;
};

inline std::vector<std::string> committed_letter_ids(const ComposerState& state) {
  std::vector<std::string> ids;
  for (const auto& c : state.committed) ids.push_back(c.letter);
  return ids;
}

// Forms come from shaping, whatever filters the learner used. A digraph
// pair contributes its digraph value once.
inline ComposerRender render(const ComposerState& state, const RuleTable& table) {
  ComposerRender out;
  const ShapedText shaped = shape(table, committed_letter_ids(state));
  out.jawi = render_logical(table, shaped);
  out.forms = shaped.forms;
  for (std::size_t i = 0; i < state.committed.size(); ++i) {
    if (i + 1 < state.committed.size() && state.committed[i + 1].digraph) continue;
    out.latin += state.committed[i].reading;
  }
  return out;
}

struct FilterMismatch {
  std::size_t index = 0;
  PositionalForm chosen = PositionalForm::Isolated;
  PositionalForm actual = PositionalForm::Isolated;

  bool operator==(const FilterMismatch&) const = default;
};

inline std::vector<FilterMismatch> check_filter_consistency(const ComposerState& state, const RuleTable& table) {
  std::vector<FilterMismatch> out;
  const auto forms = resolve_positions(table, committed_letter_ids(state));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (state.committed[i].filter != forms[i]) out.push_back({i, state.committed[i].filter, forms[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON shape shared with the HTTP service and the web UI:
//   {"committed": [{"letter","reading","form","digraph"?}],
//    "pending": null | {"letter","form","offered":[{"latin","digraph"}],"chosen"},
//    "filter": "isolated", "history_depth": N}
// History is not transmitted; each Process appends exactly one letter, so
// the snapshots are rebuilt from the committed list on load.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const ComposerState& state) {
  using nlohmann::json;
  json committed = json::array();
  for (const auto& c : state.committed) {
    json jc = {{"letter", c.letter}, {"reading", c.reading}, {"form", to_string(c.filter)}};
    if (c.digraph) jc["digraph"] = true;
    committed.push_back(std::move(jc));
  }
  json pending = nullptr;
  if (state.pending) {
    json offered = json::array();
    for (const auto& o : state.pending->offered) offered.push_back({{"latin", o.latin}, {"digraph", o.digraph}});
    pending = {{"letter", state.pending->letter},
               {"form", to_string(state.pending->form)},
               {"offered", std::move(offered)},
               {"chosen", state.pending->chosen ? json(*state.pending->chosen) : json(nullptr)}};
  }
  return json{{"committed", std::move(committed)},
              {"pending", std::move(pending)},
              {"filter", to_string(state.filter)},
              {"history_depth", state.history.size()}};
}

namespace detail {

[[noreturn]] inline void invalid_state(const std::string& why) { throw Error(ErrorCode::InvalidState, why); }

inline PositionalForm form_field(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) invalid_state(std::string("'") + key + "' must be a form name");
  auto f = parse_form(it->get<std::string>());
  if (!f) invalid_state("unknown form '" + it->get<std::string>() + "'");
  return *f;
}

inline std::string string_field(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) invalid_state(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

inline void only_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                      const std::string& where) {
  if (!obj.is_object()) invalid_state(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      invalid_state(where + ": unknown key '" + item.key() + "'");
    }
  }
}

inline std::size_t offered_index(const std::vector<OfferedReading>& offered, const CommittedLetter& c) {
  for (std::size_t i = 0; i < offered.size(); ++i) {
    if (offered[i].latin == c.reading && offered[i].digraph == c.digraph) return i;
  }
  invalid_state("reading '" + c.reading + "' is not offered for letter '" + c.letter + "'");
}

}  // namespace detail

/// Parses and validates a client-held state; `{}` is the fresh state.
/// Throws InvalidState (or UnknownLetter) on anything a reachable state
/// could not contain.
inline ComposerState composer_state_from_json(const nlohmann::json& j, const RuleTable& table) {
  detail::only_keys(j, {"committed", "pending", "filter", "history_depth"}, "state");
  ComposerState state;
  if (auto it = j.find("filter"); it != j.end()) state.filter = detail::form_field(j, "filter");

  if (auto it = j.find("committed"); it != j.end()) {
    if (!it->is_array()) detail::invalid_state("'committed' must be an array");
    for (const auto& jc : *it) {
      detail::only_keys(jc, {"letter", "reading", "form", "digraph"}, "committed entry");
      CommittedLetter c;
      c.letter = table.letter(detail::string_field(jc, "letter")).id;
      c.reading = detail::string_field(jc, "reading");
      c.filter = detail::form_field(jc, "form");
      if (auto d = jc.find("digraph"); d != jc.end()) {
        if (!d->is_boolean()) detail::invalid_state("'digraph' must be a boolean");
        c.digraph = d->get<bool>();
      }
      // Rebuild the snapshot this commit was made from.
      PendingSelection before{c.letter, c.filter, offered_readings(table, state.committed, c.letter), std::nullopt};
      before.chosen = detail::offered_index(before.offered, c);
      state.history.push_back(ComposerSnapshot{state.committed, before, c.filter});
      state.committed.push_back(std::move(c));
    }
  }

  if (auto it = j.find("history_depth"); it != j.end()) {
    if (!it->is_number_unsigned() || it->get<std::size_t>() != state.committed.size()) {
      detail::invalid_state("'history_depth' must equal the number of committed letters");
    }
  }

  if (auto it = j.find("pending"); it != j.end() && !it->is_null()) {
    detail::only_keys(*it, {"letter", "form", "offered", "chosen"}, "pending");
    PendingSelection p;
    p.letter = table.letter(detail::string_field(*it, "letter")).id;
    p.form = detail::form_field(*it, "form");
    if (p.form != state.filter) detail::invalid_state("pending form must equal the active filter");
    p.offered = offered_readings(table, state.committed, p.letter);
    if (auto o = it->find("offered"); o != it->end()) {
      std::vector<OfferedReading> given;
      if (!o->is_array()) detail::invalid_state("'offered' must be an array");
      for (const auto& jo : *o) {
        detail::only_keys(jo, {"latin", "digraph"}, "offered entry");
        auto latin = jo.find("latin");
        auto dg = jo.find("digraph");
        if (latin == jo.end() || !latin->is_string() || dg == jo.end() || !dg->is_boolean()) {
          detail::invalid_state("offered entries need 'latin' and 'digraph'");
        }
        given.push_back({latin->get<std::string>(), dg->get<bool>()});
      }
      if (given != p.offered) detail::invalid_state("offered readings do not match the rule table");
    }
    if (auto c = it->find("chosen"); c != it->end() && !c->is_null()) {
      if (!c->is_number_unsigned() || c->get<std::size_t>() >= p.offered.size()) {
        throw Error(ErrorCode::ReadingIndexOutOfRange, "'chosen' is not an offered reading index");
      }
      p.chosen = c->get<std::size_t>();
    }
    state.pending = std::move(p);
  }
  return state;
}

/// Parses {"type": "...", ...} event objects used by the HTTP API.
inline ComposerEvent composer_event_from_json(const nlohmann::json& j) {
  if (!j.is_object()) detail::invalid_state("event must be an object");
  const std::string type = detail::string_field(j, "type");
  if (type == "SetFilter") {
    detail::only_keys(j, {"type", "form"}, "event");
    return event::SetFilter{detail::form_field(j, "form")};
  }
  if (type == "PickLetter") {
    detail::only_keys(j, {"type", "letter"}, "event");
    return event::PickLetter{detail::string_field(j, "letter")};
  }
  if (type == "PickReading") {
    detail::only_keys(j, {"type", "index"}, "event");
    auto it = j.find("index");
    if (it == j.end() || !it->is_number_integer()) detail::invalid_state("'index' must be an integer");
    if (it->get<long long>() < 0) throw Error(ErrorCode::ReadingIndexOutOfRange, "negative reading index");
    return event::PickReading{it->get<std::size_t>()};
  }
  detail::only_keys(j, {"type"}, "event");
  if (type == "Process") return event::Process{};
  if (type == "NewWord") return event::NewWord{};
  if (type == "Undo") return event::Undo{};
  detail::invalid_state("unknown event type '" + type + "'");
}

}  // namespace jawi
