#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace jawi {
namespace {

using testing::table;
using F = PositionalForm;

std::vector<ComposerEvent> batu_events() {
  std::vector<ComposerEvent> events;
  for (const char* id : {"ba", "alif", "ta", "waw"}) {
    events.push_back(event::PickLetter{id});
    events.push_back(event::PickReading{0});
    events.push_back(event::Process{});
  }
  return events;
}

std::vector<ComposerEvent> batu_with_filters(F alif_filter = F::Final) {
  std::vector<ComposerEvent> events;
  const std::pair<const char*, F> steps[] = {{"ba", F::Initial}, {"alif", alif_filter}, {"ta", F::Initial}, {"waw", F::Final}};
  for (auto [id, form] : steps) {
    events.push_back(event::SetFilter{form});
    events.push_back(event::PickLetter{id});
    events.push_back(event::PickReading{0});
    events.push_back(event::Process{});
  }
  return events;
}

ErrorCode apply_error(const ComposerState& s, const ComposerEvent& e) {
  try {
    apply_event(s, e, table());
  } catch (const Error& err) {
    return err.code();
  }
  ADD_FAILURE() << "event applied";
  return ErrorCode::ParseError;
}

TEST(Composer, NewWordOnEmpty) {
  EXPECT_EQ(apply_event(ComposerState{}, event::NewWord{}, table()), ComposerState{});
}

TEST(Composer, FirstLetter) {
  const auto s = replay({event::SetFilter{F::Initial}, event::PickLetter{"ba"}, event::PickReading{0}, event::Process{}},
                        table());
  ASSERT_EQ(s.committed.size(), 1u);
  EXPECT_EQ(s.committed[0].letter, "ba");
  EXPECT_EQ(s.committed[0].reading, "b");
  EXPECT_EQ(s.committed[0].filter, F::Initial);
  const auto view = render(s, table());
  EXPECT_EQ(view.jawi, "ب");
  EXPECT_EQ(view.latin, "b");
}

TEST(Composer, BatuSession) {
  const auto events = batu_events();
  ASSERT_EQ(events.size(), 12u);
  const auto s = replay(events, table());
  EXPECT_EQ(render(s, table()), (ComposerRender{"باتو", "batu", {F::Initial, F::Final, F::Initial, F::Final}}));
  EXPECT_FALSE(s.pending);
  EXPECT_EQ(s.history.size(), 4u);
}

TEST(Composer, RenderEmptyAndSingleAlif) {
  EXPECT_EQ(render(ComposerState{}, table()), ComposerRender{});
  const auto s = replay({event::PickLetter{"alif"}, event::PickReading{0}, event::Process{}}, table());
  EXPECT_EQ(render(s, table()), (ComposerRender{"ا", "a", {F::Isolated}}));
}

TEST(Composer, OfferedReadings) {
  auto s = apply_event(ComposerState{}, event::PickLetter{"waw"}, table());
  ASSERT_TRUE(s.pending);
  std::vector<std::string> offered;
  for (const auto& o : s.pending->offered) offered.push_back(o.latin);
  EXPECT_EQ(offered, table().letter("waw").latin_readings);
  EXPECT_EQ(s.pending->form, F::Isolated);
}

TEST(Composer, DigraphAfterInitialAlif) {
  auto s = replay({event::PickLetter{"alif"}, event::PickReading{0}, event::Process{}, event::PickLetter{"waw"}}, table());
  ASSERT_TRUE(s.pending);
  EXPECT_EQ(s.pending->offered, (std::vector<OfferedReading>{{"u", false}, {"o", false}, {"w", false}, {"o", true},
                                                             {"u", true}}));
  // Compose "orang" with the o digraph.
  s = replay({event::PickReading{3}, event::Process{}, event::PickLetter{"ra"}, event::PickReading{0}, event::Process{},
              event::PickLetter{"alif"}, event::PickReading{0}, event::Process{}, event::PickLetter{"nga"},
              event::PickReading{0}, event::Process{}},
             table(), s);
  const auto view = render(s, table());
  EXPECT_EQ(view.jawi, "اوراڠ");
  EXPECT_EQ(view.latin, "orang");
}

TEST(Composer, NoDigraphAfterMedialAlif) {
  const auto s = replay({event::PickLetter{"ba"}, event::PickReading{0}, event::Process{}, event::PickLetter{"alif"},
                         event::PickReading{0}, event::Process{}, event::PickLetter{"waw"}},
                        table());
  EXPECT_EQ(s.pending->offered.size(), 3u);
}

TEST(Composer, Errors) {
  EXPECT_EQ(apply_error(ComposerState{}, event::Process{}), ErrorCode::NoPendingSelection);
  EXPECT_EQ(apply_error(ComposerState{}, event::PickReading{0}), ErrorCode::NoPendingSelection);
  const auto picked = apply_event(ComposerState{}, event::PickLetter{"ba"}, table());
  EXPECT_EQ(apply_error(picked, event::Process{}), ErrorCode::NoReadingChosen);
  EXPECT_EQ(apply_error(picked, event::PickReading{1}), ErrorCode::ReadingIndexOutOfRange);
  EXPECT_EQ(apply_error(ComposerState{}, event::PickLetter{"qq"}), ErrorCode::UnknownLetter);
}

TEST(Composer, UndoOnEmptyIsNoOp) {
  EXPECT_EQ(apply_event(ComposerState{}, event::Undo{}, table()), ComposerState{});
}

TEST(Composer, UndoRestoresPriorStateExactly) {
  ComposerState s;
  for (const auto& e : batu_with_filters()) {
    const ComposerState before = s;
    s = apply_event(s, e, table());
    if (std::holds_alternative<event::Process>(e)) {
      EXPECT_EQ(apply_event(s, event::Undo{}, table()), before);
    }
  }
}

TEST(Composer, FilterConsistency) {
  EXPECT_TRUE(check_filter_consistency(ComposerState{}, table()).empty());
  EXPECT_TRUE(check_filter_consistency(replay(batu_with_filters(), table()), table()).empty());
  const auto wrong = replay(batu_with_filters(F::Medial), table());
  EXPECT_EQ(check_filter_consistency(wrong, table()), (std::vector<FilterMismatch>{{1, F::Medial, F::Final}}));
  // Forms come from shaping regardless of the filters.
  EXPECT_EQ(render(wrong, table()).forms, render(replay(batu_events(), table()), table()).forms);
}

// Random walks over the event space: undo soundness, NewWord reset and
// render/shape consistency at every reachable state.
TEST(Composer, RandomWalkProperties) {
  std::mt19937 rng(11);
  const auto& letters = table().letters();
  std::uniform_int_distribution<std::size_t> pick_letter(0, letters.size() - 1);
  std::uniform_int_distribution<int> kind(0, 9);
  for (int walk = 0; walk < 200; ++walk) {
    ComposerState s;
    for (int step = 0; step < 40; ++step) {
      ComposerEvent e;
      switch (kind(rng)) {
        case 0: e = event::SetFilter{kAllForms[rng() % 4]}; break;
        case 1:
        case 2: e = event::PickLetter{letters[pick_letter(rng)].id}; break;
        case 3:
        case 4: e = event::PickReading{s.pending ? rng() % s.pending->offered.size() : 0}; break;
        case 5:
        case 6:
        case 7: e = event::Process{}; break;
        case 8: e = event::Undo{}; break;
        default: e = event::NewWord{}; break;
      }
      ComposerState next;
      try {
        next = apply_event(s, e, table());
      } catch (const Error&) {
        continue;
      }
      if (std::holds_alternative<event::Process>(e)) {
        ASSERT_EQ(apply_event(next, event::Undo{}, table()).committed, s.committed);
        ASSERT_EQ(apply_event(next, event::Undo{}, table()), s);
      }
      s = next;
      ASSERT_EQ(apply_event(s, event::NewWord{}, table()), ComposerState{});
      const auto view = render(s, table());
      ASSERT_EQ(view.forms, resolve_positions(table(), committed_letter_ids(s)));
      ASSERT_EQ(composer_state_from_json(to_json(s), table()), s);
    }
  }
}

TEST(Composer, DeterministicReplay) {
  EXPECT_EQ(replay(batu_with_filters(), table()), replay(batu_with_filters(), table()));
}

TEST(Composer, CorpusWordsComposeFromPrimaryDerivation) {
  std::size_t composed = 0;
  for (const auto& entry : default_corpus()) {
    if (entry.status != EntryStatus::Normative) continue;
    const auto ids = parse_jawi(table(), entry.jawi);
    const auto cs = jawi_to_latin(ids, table(), kUnlimited);
    auto it = std::find_if(cs.begin(), cs.end(), [&](const ReadingCandidate& c) { return c.latin == entry.latin; });
    ASSERT_NE(it, cs.end()) << entry.latin;
    if (it->insertions() > 0) continue;
    ComposerState s;
    for (const auto& step : it->trace) {
      if (step.kind == TraceStep::Kind::Reading) {
        s = apply_event(s, event::PickLetter{step.rule}, table());
        const auto& reading = table().letter(step.rule).latin_readings[step.index];
        std::size_t idx = 0;
        while (s.pending->offered[idx].latin != reading || s.pending->offered[idx].digraph) ++idx;
        s = replay({event::PickReading{idx}, event::Process{}}, table(), s);
      } else {
        // Digraph: bare alif first, then the second letter with the digraph value.
        const DigraphRule* d = nullptr;
        for (const auto& r : table().digraphs()) {
          if (r.id == step.rule) d = &r;
        }
        ASSERT_NE(d, nullptr);
        s = replay({event::PickLetter{d->jawi_pair.first}, event::PickReading{0}, event::Process{},
                    event::PickLetter{d->jawi_pair.second}},
                   table(), s);
        std::size_t idx = 0;
        while (!(s.pending->offered[idx].digraph && s.pending->offered[idx].latin == d->latin_values[step.index])) ++idx;
        s = replay({event::PickReading{idx}, event::Process{}}, table(), s);
      }
    }
    const auto view = render(s, table());
    EXPECT_EQ(view.latin, entry.latin);
    EXPECT_EQ(view.jawi, entry.jawi);
    ++composed;
  }
  EXPECT_GE(composed, 15u);
}

// ---- JSON ----------------------------------------------------------------

TEST(ComposerJson, EmptyObjectIsFreshState) {
  EXPECT_EQ(composer_state_from_json(nlohmann::json::object(), table()), ComposerState{});
}

TEST(ComposerJson, RoundTripWithPendingAndHistory) {
  auto s = replay(batu_with_filters(), table());
  s = replay({event::SetFilter{F::Initial}, event::PickLetter{"nun"}, event::PickReading{0}}, table(), s);
  const auto j = to_json(s);
  EXPECT_EQ(j["history_depth"], 4);
  EXPECT_EQ(j["filter"], "initial");
  EXPECT_EQ(composer_state_from_json(j, table()), s);
  // Undo still works after a round trip.
  const auto back = composer_state_from_json(j, table());
  EXPECT_EQ(apply_event(apply_event(back, event::Undo{}, table()), event::Undo{}, table()).committed.size(), 2u);
}

TEST(ComposerJson, RejectsInconsistentState) {
  auto j = to_json(replay(batu_events(), table()));
  auto bad_depth = j;
  bad_depth["history_depth"] = 2;
  EXPECT_THROW(composer_state_from_json(bad_depth, table()), Error);
  auto bad_reading = j;
  bad_reading["committed"][0]["reading"] = "zz";
  EXPECT_THROW(composer_state_from_json(bad_reading, table()), Error);
  auto unknown_key = j;
  unknown_key["extra"] = true;
  EXPECT_THROW(composer_state_from_json(unknown_key, table()), Error);
}

TEST(ComposerJson, Events) {
  using nlohmann::json;
  EXPECT_TRUE(std::holds_alternative<event::Process>(composer_event_from_json(json{{"type", "Process"}})));
  const auto pick = composer_event_from_json(json{{"type", "PickLetter"}, {"letter", "ba"}});
  ASSERT_TRUE(std::holds_alternative<event::PickLetter>(pick));
  EXPECT_EQ(std::get<event::PickLetter>(pick).letter, "ba");
  const auto filter = composer_event_from_json(json{{"type", "SetFilter"}, {"form", "medial"}});
  EXPECT_EQ(std::get<event::SetFilter>(filter).form, F::Medial);
  EXPECT_THROW(composer_event_from_json(json{{"type", "Explode"}}), Error);
  EXPECT_THROW(composer_event_from_json(json{{"type", "PickReading"}, {"index", -1}}), Error);
}

}  // namespace
}  // namespace jawi
