#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "jawi/composer.hpp"
#include "jawi/error.hpp"
#include "jawi/ruleset.hpp"
#include "jawi/shaping.hpp"
#include "jawi/utf8.hpp"

namespace jawi {

// Line-oriented terminal front end for the composer.
//
//   f <form>     set the position filter (isolated|initial|medial|final or 1-4)
//   l <letter>   pick a letter by id or glyph
//   r <reading>  choose a reading by index or by its Latin text
//   p            process the pending letter
//   u            undo the last process
//   n            new word (Ctrl+N in the desktop tool)
//   s            show the current state
//   h, ?         help
//   q            quit; prints the word and the filter report
//
// Nothing is printed for an untouched session.
class LessonSession {
 public:
  LessonSession(const RuleTable& table, std::ostream& out, bool prompt = false)
      : table_(table), out_(out), prompt_(prompt) {}

  const ComposerState& state() const noexcept { return state_; }

  // Returns false once the session asked to quit.
  bool handle(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::string cmd, arg;
    in >> cmd >> arg;
    if (cmd.empty()) return true;
    try {
      if (cmd == "q") {
        finish();
        return false;
      }
      if (cmd == "h" || cmd == "?") {
        help();
      } else if (cmd == "s") {
        show();
      } else if (cmd == "f") {
        step(event::SetFilter{parse_filter(arg)});
      } else if (cmd == "l") {
        step(event::PickLetter{letter_id(arg)});
      } else if (cmd == "r") {
        step(event::PickReading{reading_index(arg)});
      } else if (cmd == "p") {
        step(event::Process{});
      } else if (cmd == "u") {
        step(event::Undo{});
      } else if (cmd == "n") {
        step(event::NewWord{});
      } else {
        out_ << "error: unknown command '" << cmd << "' (h for help)\n";
      }
    } catch (const Error& e) {
      out_ << "error: " << e.what() << "\n";
    }
    return true;
  }

  void run(std::istream& in) {
    std::string line;
    if (prompt_) out_ << "> " << std::flush;
    while (std::getline(in, line)) {
      if (!handle(line)) return;
      if (prompt_) out_ << "> " << std::flush;
    }
    finish();
  }

 private:
  void step(const ComposerEvent& e) {
    state_ = apply_event(state_, e, table_);
    show();
  }

  void show() {
    const ComposerRender view = render(state_, table_);
    out_ << "  " << view.jawi << " / " << view.latin << "  [filter " << to_string(state_.filter) << "]";
    if (state_.pending) {
      out_ << "  pending " << state_.pending->letter << ":";
      for (std::size_t i = 0; i < state_.pending->offered.size(); ++i) {
        const auto& o = state_.pending->offered[i];
        const bool chosen = state_.pending->chosen == i;
        out_ << " " << (chosen ? "*" : "") << i << "=" << o.latin << (o.digraph ? "(digraph)" : "");
      }
    }
    out_ << "\n";
  }

  void finish() {
    if (finished_) return;
    finished_ = true;
    if (state_.committed.empty()) return;
    const ComposerRender view = render(state_, table_);
    out_ << view.jawi << " / " << view.latin << "\n";
    const auto mismatches = check_filter_consistency(state_, table_);
    if (mismatches.empty()) {
      out_ << "filters: all positions correct\n";
    }
    for (const auto& m : mismatches) {
      out_ << "filters: letter " << m.index << " (" << state_.committed[m.index].letter << ") picked "
           << to_string(m.chosen) << ", shaped " << to_string(m.actual) << "\n";
    }
  }

  void help() {
    out_ << "f <form> filter | l <letter> pick | r <n|latin> reading | p process | u undo | n new | s show | q quit\n";
  }

  static PositionalForm parse_filter(const std::string& arg) {
    if (arg.size() == 1 && arg[0] >= '1' && arg[0] <= '4') return kAllForms[static_cast<std::size_t>(arg[0] - '1')];
    if (auto f = parse_form(arg)) return *f;
    throw Error(ErrorCode::InvalidState, "unknown filter '" + arg + "'");
  }

  std::string letter_id(const std::string& arg) const {
    if (const Letter* l = table_.find(arg)) return l->id;
    try {
      const auto cps = utf8::decode(arg);
      if (cps.size() == 1) return table_.letter(cps[0]).id;
    } catch (const Error&) {
    }
    throw Error(ErrorCode::UnknownLetter, "no letter '" + arg + "'");
  }

  std::size_t reading_index(const std::string& arg) const {
    if (!state_.pending) throw Error(ErrorCode::NoPendingSelection, "pick a letter first");
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), index);
    if (ec == std::errc{} && ptr == arg.data() + arg.size() && !arg.empty()) return index;
    const auto& offered = state_.pending->offered;
    for (std::size_t i = 0; i < offered.size(); ++i) {
      if (offered[i].latin == arg) return i;
    }
    throw Error(ErrorCode::ReadingIndexOutOfRange, "'" + arg + "' is not an offered reading");
  }

  const RuleTable& table_;
  std::ostream& out_;
  bool prompt_;
  bool finished_ = false;
  ComposerState state_;
};

}  // namespace jawi
