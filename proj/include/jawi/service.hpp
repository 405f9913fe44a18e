#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "jawi/catalog.hpp"
#include "jawi/composer.hpp"
#include "jawi/corpus.hpp"
#include "jawi/error.hpp"
#include "jawi/ruleset.hpp"
#include "jawi/transliterate.hpp"

namespace jawi::service {

using nlohmann::json;

inline constexpr int kDefaultPort = 8808;
inline constexpr std::size_t kDefaultLimit = 5;
inline constexpr std::size_t kMaxLimit = 1000;

// Codes beyond the engine's ErrorCode names.
inline constexpr std::string_view kInvalidRequest = "InvalidRequest";
inline constexpr std::string_view kNotFound = "NotFound";

struct ApiResponse {
  int status = 200;
  json body;
};

inline ApiResponse api_error(int status, std::string_view code, const std::string& message,
                             std::optional<json> detail = std::nullopt) {
  json err = {{"code", code}, {"message", message}};
  if (detail) err["detail"] = std::move(*detail);
  return {status, json{{"error", std::move(err)}}};
}

inline ApiResponse api_error(const Error& e) {
  std::optional<json> detail;
  if (e.position()) detail = json{{"position", *e.position()}};
  return api_error(400, to_string(e.code()), e.detail(), std::move(detail));
}

struct Options {
  // Empty means any origin ("*").
  std::vector<std::string> cors_allowlist;
  std::optional<std::string> static_dir;
};

inline std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(std::move(w));
  return words;
}

inline json forms_json(const std::vector<PositionalForm>& forms) {
  json out = json::array();
  for (auto f : forms) out.push_back(to_string(f));
  return out;
}

inline json candidate_json(const ReadingCandidate& c) {
  json trace = json::array();
  for (const auto& step : c.trace) trace.push_back(to_string(step));
  return json{{"latin", c.latin}, {"score", c.score()}, {"trace", std::move(trace)}};
}

/// Request handlers as pure functions of (request body, rule table), plus
/// the HTTP wiring around them.
class Service {
 public:
  Service(RuleTable table, std::vector<CorpusEntry> corpus, Options options = {})
      : table_(std::move(table)), corpus_(std::move(corpus)), options_(std::move(options)) {
    json letters = json::array();
    for (const auto& info : letter_catalog(table_, corpus_)) letters.push_back(to_json(info));
    letters_ = std::move(letters);
  }

  const RuleTable& table() const noexcept { return table_; }

  ApiResponse health() const { return {200, json{{"ok", true}}}; }

  ApiResponse letters() const { return {200, letters_}; }

  ApiResponse transliterate(std::string_view body) const {
    json req;
    if (auto bad = parse_object(body, req)) return *bad;
    for (const auto& item : req.items()) {
      static constexpr std::string_view kKeys[] = {"direction", "word", "mode", "limit"};
      if (std::find(std::begin(kKeys), std::end(kKeys), item.key()) == std::end(kKeys)) {
        return api_error(400, kInvalidRequest, "unknown key '" + item.key() + "'");
      }
    }
    auto direction = req.find("direction");
    if (direction == req.end() || !direction->is_string() ||
        (*direction != "to-jawi" && *direction != "to-latin")) {
      return api_error(400, kInvalidRequest, "'direction' must be \"to-jawi\" or \"to-latin\"");
    }
    auto word = req.find("word");
    if (word == req.end() || !word->is_string()) return api_error(400, kInvalidRequest, "'word' must be a string");

    SpellingMode mode = table_.spelling_mode();
    if (auto m = req.find("mode"); m != req.end()) {
      auto parsed = m->is_string() ? parse_mode(m->get<std::string>()) : std::nullopt;
      if (!parsed) return api_error(400, kInvalidRequest, "'mode' must be \"plene\" or \"traditional\"");
      mode = *parsed;
    }
    std::size_t limit = kDefaultLimit;
    if (auto l = req.find("limit"); l != req.end()) {
      if (!l->is_number_integer() || l->get<long long>() < 1 || l->get<long long>() > static_cast<long long>(kMaxLimit)) {
        return api_error(400, kInvalidRequest, "'limit' must be an integer in [1, " + std::to_string(kMaxLimit) + "]");
      }
      limit = l->get<std::size_t>();
    }

    const auto words = split_words(word->get<std::string>());
    if (words.empty()) return api_error(Error(ErrorCode::EmptyInput, "word is empty"));

    try {
      json per_word = json::array();
      if (*direction == "to-jawi") {
        std::string joined;
        for (const auto& w : words) {
          std::string lower = w;
          std::transform(lower.begin(), lower.end(), lower.begin(),
                         [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
          const ShapedText shaped = latin_to_jawi(lower, table_, mode);
          const std::string jawi = render_logical(table_, shaped);
          per_word.push_back({{"word", w}, {"jawi", jawi}, {"forms", forms_json(shaped.forms)},
                              {"letters", shaped.letters}});
          joined += (joined.empty() ? "" : " ") + jawi;
        }
        json out = {{"jawi", joined}, {"words", per_word}};
        if (words.size() == 1) {
          out["forms"] = per_word[0]["forms"];
          out["letters"] = per_word[0]["letters"];
        }
        return {200, std::move(out)};
      }
      for (const auto& w : words) {
        json candidates = json::array();
        for (const auto& c : jawi_to_latin(w, table_, limit)) candidates.push_back(candidate_json(c));
        per_word.push_back({{"word", w}, {"candidates", std::move(candidates)}});
      }
      json out = {{"words", per_word}};
      if (words.size() == 1) out["candidates"] = per_word[0]["candidates"];
      return {200, std::move(out)};
    } catch (const Error& e) {
      return api_error(e);
    }
  }

  ApiResponse composer_step(std::string_view body) const {
    json req;
    if (auto bad = parse_object(body, req)) return *bad;
    for (const auto& item : req.items()) {
      if (item.key() != "state" && item.key() != "event") {
        return api_error(400, kInvalidRequest, "unknown key '" + item.key() + "'");
      }
    }
    auto jstate = req.find("state");
    auto jevent = req.find("event");
    if (jevent == req.end()) return api_error(400, kInvalidRequest, "'event' is required");
    try {
      const ComposerState state =
          composer_state_from_json(jstate == req.end() ? json::object() : *jstate, table_);
      const ComposerState next = apply_event(state, composer_event_from_json(*jevent), table_);
      const ComposerRender view = render(next, table_);
      json consistency = json::array();
      for (const auto& m : check_filter_consistency(next, table_)) {
        consistency.push_back({{"index", m.index}, {"chosen", to_string(m.chosen)}, {"actual", to_string(m.actual)}});
      }
      return {200, json{{"state", to_json(next)},
                        {"render", {{"jawi", view.jawi}, {"latin", view.latin}, {"forms", forms_json(view.forms)}}},
                        {"consistency", std::move(consistency)}}};
    } catch (const Error& e) {
      return api_error(e);
    }
  }

  /// Routes onto an httplib server; the caller owns listening.
  void mount(httplib::Server& server) const {
    auto reply = [this](const httplib::Request& req, httplib::Response& res, const ApiResponse& r) {
      res.status = r.status;
      apply_cors(req, res);
      res.set_content(r.body.dump(), "application/json; charset=utf-8");
    };
    server.Get("/api/health", [=, this](const httplib::Request& req, httplib::Response& res) { reply(req, res, health()); });
    server.Get("/api/letters", [=, this](const httplib::Request& req, httplib::Response& res) { reply(req, res, letters()); });
    server.Post("/api/transliterate", [=, this](const httplib::Request& req, httplib::Response& res) {
      reply(req, res, transliterate(req.body));
    });
    server.Post("/api/composer/step", [=, this](const httplib::Request& req, httplib::Response& res) {
      reply(req, res, composer_step(req.body));
    });
    server.Options(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
      apply_cors(req, res);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
    if (options_.static_dir) server.set_mount_point("/", *options_.static_dir);
    server.set_error_handler([=](const httplib::Request& req, httplib::Response& res) {
      if (res.status == 404 && req.path.rfind("/api/", 0) == 0) {
        reply(req, res, api_error(404, kNotFound, "no route for " + req.method + " " + req.path));
      }
    });
  }

 private:
  static std::optional<ApiResponse> parse_object(std::string_view body, json& out) {
    try {
      out = json::parse(body.begin(), body.end());
    } catch (const json::parse_error& e) {
      return api_error(400, kInvalidRequest, std::string("body is not valid JSON: ") + e.what());
    }
    if (!out.is_object()) return api_error(400, kInvalidRequest, "body must be a JSON object");
    return std::nullopt;
  }

  void apply_cors(const httplib::Request& req, httplib::Response& res) const {
    if (options_.cors_allowlist.empty()) {
      res.set_header("Access-Control-Allow-Origin", "*");
      return;
    }
    const std::string origin = req.get_header_value("Origin");
    const auto& allow = options_.cors_allowlist;
    if (std::find(allow.begin(), allow.end(), origin) != allow.end()) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Vary", "Origin");
    }
  }

  RuleTable table_;
  std::vector<CorpusEntry> corpus_;
  Options options_;
  json letters_;
};

}  // namespace jawi::service
