#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jawi/catalog.hpp"
#include "jawi/corpus.hpp"
#include "jawi/defaults.hpp"
#include "jawi/lesson.hpp"
#include "jawi/service.hpp"
#include "jawi/transliterate.hpp"

namespace jawi::cli {

using nlohmann::json;

enum Exit : int { kOk = 0, kUsage = 1, kFailed = 2 };

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool stdin_is_tty = false;
};

struct Config {
  std::optional<std::string> table_path;
  std::optional<std::string> mode;
  bool as_json = false;
  std::size_t limit = service::kDefaultLimit;
};

namespace detail {

inline std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string forms_text(const ShapedText& shaped) {
  std::string out;
  for (std::size_t i = 0; i < shaped.letters.size(); ++i) {
    if (i) out += ' ';
    out += shaped.letters[i] + ":" + std::string(to_string(shaped.forms[i]));
  }
  return out;
}

inline json error_json(const Error& e) {
  json j = {{"code", to_string(e.code())}, {"message", e.detail()}};
  if (e.position()) j["position"] = *e.position();
  return j;
}

// Plain-text names for the letter listing.
inline std::string_view joining_name(JoiningClass c) {
  return c == JoiningClass::DualJoining ? "DualJoining" : "RightJoiningOnly";
}

inline std::string_view category_name(Category c) {
  switch (c) {
    case Category::VowelCarrier: return "VowelCarrier";
    case Category::Consonant: return "Consonant";
    case Category::ExtendedJawi: return "ExtendedJawi";
  }
  return "";
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace detail

class Runner {
 public:
  Runner(const Config& config, Streams io) : config_(config), io_(io) {}

  // Loads the rule table and applies --mode. Returns an exit code on failure.
  std::optional<int> load() {
    try {
      if (config_.table_path) {
        std::ifstream f(*config_.table_path);
        if (!f) {
          io_.err << "error: cannot open rule table '" << *config_.table_path << "'\n";
          return kUsage;
        }
        table_ = load_rule_table(f);
      } else {
        table_ = default_rule_table();
      }
      if (config_.mode) {
        auto m = parse_mode(*config_.mode);
        if (!m) {
          io_.err << "error: unknown mode '" << *config_.mode << "' (plene|traditional)\n";
          return kUsage;
        }
        table_ = table_->with_mode(*m);
      }
    } catch (const Error& e) {
      io_.err << "error: rule table: " << e.what() << "\n";
      return kUsage;
    }
    return std::nullopt;
  }

  const RuleTable& table() const { return *table_; }

  int to_jawi(const std::vector<std::string>& words, bool show_forms) {
    int code = kOk;
    json out = json::array();
    for (const auto& raw : words) {
      const std::string word = detail::lowercase(raw);
      try {
        const ShapedText shaped = latin_to_jawi(word, *table_);
        const std::string jawi = render_logical(*table_, shaped);
        if (config_.as_json) {
          out.push_back({{"word", raw}, {"jawi", jawi}, {"letters", shaped.letters},
                         {"forms", service::forms_json(shaped.forms)}});
        } else {
          io_.out << jawi;
          if (show_forms) io_.out << "\t" << detail::forms_text(shaped);
          io_.out << "\n";
        }
      } catch (const Error& e) {
        code = kFailed;
        if (config_.as_json) out.push_back({{"word", raw}, {"error", detail::error_json(e)}});
        io_.err << "error: " << raw << ": " << e.what() << "\n";
      }
    }
    if (config_.as_json) io_.out << out.dump(2) << "\n";
    return code;
  }

  int to_latin(const std::vector<std::string>& words) {
    int code = kOk;
    json out = json::array();
    for (const auto& word : words) {
      try {
        const auto candidates = jawi_to_latin(word, *table_, config_.limit);
        if (config_.as_json) {
          json list = json::array();
          for (const auto& c : candidates) list.push_back(service::candidate_json(c));
          out.push_back({{"word", word}, {"candidates", std::move(list)}});
          continue;
        }
        if (words.size() > 1) io_.out << word << "\n";
        for (std::size_t i = 0; i < candidates.size(); ++i) {
          const auto& c = candidates[i];
          std::vector<std::string> steps;
          for (const auto& s : c.trace) steps.push_back(to_string(s));
          io_.out << std::setw(3) << i + 1 << ". " << std::left << std::setw(12) << c.latin << std::right << " "
                  << std::fixed << std::setprecision(3) << c.score() << "  " << detail::join(steps, " ") << "\n";
        }
      } catch (const Error& e) {
        code = kFailed;
        if (config_.as_json) out.push_back({{"word", word}, {"error", detail::error_json(e)}});
        io_.err << "error: " << word << ": " << e.what() << "\n";
      }
    }
    if (config_.as_json) io_.out << out.dump(2) << "\n";
    return code;
  }

  // Jawi in, letter ids and resolved forms out.
  int shape_words(const std::vector<std::string>& words) {
    int code = kOk;
    json out = json::array();
    for (const auto& word : words) {
      try {
        const ShapedText shaped = shape(*table_, parse_jawi(*table_, word));
        if (config_.as_json) {
          out.push_back({{"word", word}, {"letters", shaped.letters}, {"forms", service::forms_json(shaped.forms)}});
        } else {
          io_.out << detail::forms_text(shaped) << "\n";
        }
      } catch (const Error& e) {
        code = kFailed;
        if (config_.as_json) out.push_back({{"word", word}, {"error", detail::error_json(e)}});
        io_.err << "error: " << word << ": " << e.what() << "\n";
      }
    }
    if (config_.as_json) io_.out << out.dump(2) << "\n";
    return code;
  }

  int letters(const std::vector<CorpusEntry>& corpus) {
    const auto catalog = letter_catalog(*table_, corpus);
    if (config_.as_json) {
      json out = json::array();
      for (const auto& info : catalog) out.push_back(to_json(info));
      io_.out << out.dump(2) << "\n";
      return kOk;
    }
    static constexpr const char* kFormTags[] = {"iso", "ini", "med", "fin"};
    for (const auto& info : catalog) {
      const Letter& l = *info.letter;
      std::string forms;
      for (std::size_t f = 0; f < kAllForms.size(); ++f) {
        if (f) forms += ' ';
        forms += l.has_form(kAllForms[f]) ? kFormTags[f] : "---";
      }
      io_.out << std::left << std::setw(7) << l.id << " " << info.glyph << "  " << RuleTable::format_codepoint(l.codepoint)
              << "  " << std::setw(16) << detail::joining_name(l.joining) << " " << std::setw(12)
              << detail::category_name(l.category) << " " << forms << "  " << std::setw(10)
              << detail::join(l.latin_readings, ",") << " ";
      if (info.example_latin) io_.out << *info.example_latin << " " << *info.example_jawi;
      io_.out << std::right << "\n";
    }
    return kOk;
  }

  int lesson(const std::optional<std::string>& script) {
    if (script) {
      std::ifstream f(*script);
      if (!f) {
        io_.err << "error: cannot open script '" << *script << "'\n";
        return kUsage;
      }
      LessonSession(*table_, io_.out).run(f);
      return kOk;
    }
    if (!io_.stdin_is_tty) {
      io_.err << "error: lesson needs an interactive terminal (use --script FILE for scripted input)\n";
      return kUsage;
    }
    io_.out << "lesson: h for help, q to quit\n";
    LessonSession(*table_, io_.out, true).run(io_.in);
    return kOk;
  }

  int corpus_check(const std::optional<std::string>& path) {
    std::vector<CorpusEntry> entries;
    try {
      if (path) {
        std::ifstream f(*path);
        if (!f) {
          io_.err << "error: cannot open corpus '" << *path << "'\n";
          return kUsage;
        }
        entries = load_corpus(f);
      } else {
        entries = default_corpus();
      }
    } catch (const Error& e) {
      io_.err << "error: corpus: " << e.what() << "\n";
      return kUsage;
    }
    const CorpusReport report = verify_corpus(entries, *table_);
    if (config_.as_json) {
      io_.out << to_json(report).dump(2) << "\n";
    } else {
      for (const auto& c : report.checks) {
        const char* tag = c.passed() ? "PASS" : (c.blocking_failure() ? "FAIL" : "WARN");
        io_.out << tag << "  " << std::left << std::setw(10) << c.entry->latin << std::right << " " << c.entry->jawi
                << "  " << to_string(c.entry->status) << "/" << to_string(c.entry->mode);
        if (!c.passed()) {
          io_.out << "  encodes=" << (c.encodes ? "yes" : "no") << " decodes=" << (c.decodes ? "yes" : "no");
          if (!c.encoded.empty() && !c.encodes) io_.out << " got " << c.encoded;
          if (c.error) io_.out << " (" << *c.error << ")";
        }
        io_.out << "\n";
      }
      io_.out << report.normative_passed() << "/" << report.normative_total() << " normative entries pass\n";
    }
    return report.ok() ? kOk : kFailed;
  }

  int serve(const std::string& host, int port, const std::optional<std::string>& static_dir,
            const std::vector<std::string>& cors) {
    service::Options options;
    options.cors_allowlist = cors;
    options.static_dir = static_dir;
    service::Service svc(*table_, default_corpus(), options);
    httplib::Server server;
    svc.mount(server);
    if (!server.bind_to_port(host, port)) {
      io_.err << "error: cannot bind " << host << ":" << port << "\n";
      return kUsage;
    }
    io_.out << "listening on http://" << host << ":" << port << "\n" << std::flush;
    server.listen_after_bind();
    return kOk;
  }

 private:
  Config config_;
  Streams io_;
  std::optional<RuleTable> table_;
};

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 usage or
/// IO/config failure, 2 for input the engine rejects or a failed corpus gate.
inline int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Jawi (Arab-Melayu) transliteration toolkit", "jawi"};
  app.require_subcommand(1);
  app.fallthrough();

  Config config;
  app.add_option("--table", config.table_path, "Rule table JSON (default: built-in table)");
  app.add_option("--mode", config.mode, "Spelling mode override")->check(CLI::IsMember({"plene", "traditional"}));
  app.add_flag("--json", config.as_json, "JSON output");
  app.add_option("--limit", config.limit, "Maximum decoder candidates")->check(CLI::PositiveNumber);

  std::vector<std::string> words;
  bool show_forms = false;
  auto* to_jawi = app.add_subcommand("to-jawi", "Latin words to Jawi");
  to_jawi->add_option("words", words, "Latin words")->required();
  to_jawi->add_flag("--forms", show_forms, "Also print each letter's positional form");

  auto* to_latin = app.add_subcommand("to-latin", "Jawi words to ranked Latin candidates");
  to_latin->add_option("words", words, "Jawi words (logical order)")->required();

  auto* shape_cmd = app.add_subcommand("shape", "Positional forms of Jawi words");
  shape_cmd->add_option("words", words, "Jawi words (logical order)")->required();

  auto* letters_cmd = app.add_subcommand("letters", "Letter reference table");

  std::optional<std::string> script;
  auto* lesson_cmd = app.add_subcommand("lesson", "Terminal word composer");
  lesson_cmd->add_option("--script", script, "Read commands from a file instead of the terminal");

  std::optional<std::string> corpus_path;
  auto* corpus_cmd = app.add_subcommand("corpus", "Corpus tools");
  corpus_cmd->require_subcommand(1);
  auto* check_cmd = corpus_cmd->add_subcommand("check", "Verify a corpus against the rule table");
  check_cmd->add_option("path", corpus_path, "Corpus JSON (default: built-in corpus)");

  std::string host = "127.0.0.1";
  int port = service::kDefaultPort;
  std::optional<std::string> static_dir;
  std::vector<std::string> cors;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON API");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--static", static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--cors", cors, "Allowed origin (repeatable; default: any)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    io.err << "run with --help for usage\n";
    return kUsage;
  }

  for (const auto& w : words) {
    if (w.empty()) {
      io.err << "error: empty word\n";
      return kUsage;
    }
  }

  Runner runner(config, io);
  if (auto failed = runner.load()) return *failed;

  if (to_jawi->parsed()) return runner.to_jawi(words, show_forms);
  if (to_latin->parsed()) return runner.to_latin(words);
  if (shape_cmd->parsed()) return runner.shape_words(words);
  if (letters_cmd->parsed()) return runner.letters(default_corpus());
  if (lesson_cmd->parsed()) return runner.lesson(script);
  if (check_cmd->parsed()) return runner.corpus_check(corpus_path);
  if (serve_cmd->parsed()) return runner.serve(host, port, static_dir, cors);
  return kUsage;
}

}  // namespace jawi::cli
