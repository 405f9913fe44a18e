#include <gtest/gtest.h>

#include <sstream>

#include "jawi/lesson.hpp"
#include "support.hpp"

namespace jawi {
namespace {

std::string run_script(const std::string& script) {
  std::istringstream in(script);
  std::ostringstream out;
  LessonSession(testing::table(), out).run(in);
  return out.str();
}

std::string last_lines(const std::string& text, std::size_t n) {
  std::size_t pos = text.size();
  for (std::size_t i = 0; i <= n && pos != std::string::npos && pos > 0; ++i) pos = text.rfind('\n', pos - 1);
  return pos == std::string::npos ? text : text.substr(pos + 1);
}

TEST(Lesson, BatuScript) {
  const auto out = run_script("f initial\nl ba\nr 0\np\nf final\nl alif\nr a\np\nf 2\nl ت\nr t\np\nf final\nl waw\nr 0\np\nq\n");
  EXPECT_EQ(last_lines(out, 2), "باتو / batu\nfilters: all positions correct\n");
}

TEST(Lesson, ImmediateQuitPrintsNothing) { EXPECT_EQ(run_script("q\n"), ""); }

TEST(Lesson, EndOfInputFinishes) {
  EXPECT_EQ(last_lines(run_script("l alif\nr 0\np\n"), 2), "ا / a\nfilters: all positions correct\n");
}

TEST(Lesson, ProcessWithNothingPending) {
  std::ostringstream out;
  LessonSession session(testing::table(), out);
  EXPECT_TRUE(session.handle("p"));
  EXPECT_NE(out.str().find("error: NoPendingSelection"), std::string::npos);
  EXPECT_TRUE(session.state().empty());
}

TEST(Lesson, MismatchReport) {
  const auto out = run_script("l ba\nr 0\np\nl alif\nr 0\np\nq\n");
  EXPECT_NE(out.find("filters: letter 0 (ba) picked isolated, shaped initial"), std::string::npos);
  EXPECT_NE(out.find("filters: letter 1 (alif) picked isolated, shaped final"), std::string::npos);
}

TEST(Lesson, UndoAndNewWord) {
  std::ostringstream out;
  LessonSession session(testing::table(), out);
  for (const char* line : {"l ba", "r 0", "p", "l alif", "r 0", "p", "u"}) session.handle(line);
  EXPECT_EQ(session.state().committed.size(), 1u);
  EXPECT_TRUE(session.state().pending);
  session.handle("n");
  EXPECT_TRUE(session.state().empty());
}

TEST(Lesson, BadCommands) {
  const auto out = run_script("zz\nl qq\nf sideways\nl ba\nr 9\nq\n");
  EXPECT_NE(out.find("unknown command"), std::string::npos);
  EXPECT_NE(out.find("error: UnknownLetter"), std::string::npos);
  EXPECT_NE(out.find("unknown filter"), std::string::npos);
  EXPECT_NE(out.find("error: ReadingIndexOutOfRange"), std::string::npos);
}

}  // namespace
}  // namespace jawi
