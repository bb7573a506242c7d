#include "framing/service.hpp"

#include "framing/analysis.hpp"
#include "framing/json_codec.hpp"

#include <httplib.h>

#include <algorithm>
#include <limits>
#include <set>

namespace framing {

using nlohmann::json;

int http_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return 400;
    case ErrorKind::domain: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::already_answered: return 409;
    case ErrorKind::incomplete: return 409;
    case ErrorKind::locked: return 423;
    case ErrorKind::configuration: return 500;
    case ErrorKind::persistence: return 500;
    case ErrorKind::corrupt_store: return 500;
  }
  return 500;
}

namespace {

HttpResult error_result(int status, std::string_view kind, const std::string& message) {
  return {status, {{"error", kind}, {"message", message}}};
}

HttpResult error_result(const Error& e) { return error_result(http_status(e.kind()), to_string(e.kind()), e.what()); }

/// Parses a request body that must be a JSON object holding only the
/// allowed keys. An empty body is an empty object.
json parse_body(const std::string& body, const std::set<std::string>& allowed) {
  json j;
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) {
    j = json::object();
  } else {
    try {
      j = json::parse(body);
    } catch (const json::exception&) {
      fail(ErrorKind::validation, "request body is not valid JSON");
    }
  }
  if (!j.is_object()) fail(ErrorKind::validation, "request body must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) fail(ErrorKind::validation, "unexpected field '" + key + "'");
  }
  return j;
}

std::string optional_text(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  if (!j.at(key).is_string()) fail(ErrorKind::validation, std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

template <class Int>
std::optional<Int> optional_int(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(ErrorKind::validation, std::string("field '") + key + "' must be an integer");
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
      fail(ErrorKind::validation, std::string("field '") + key + "' out of range");
    }
    return static_cast<Int>(u);
  }
  auto s = v.get<std::int64_t>();
  if (s < static_cast<std::int64_t>(std::numeric_limits<Int>::min()) ||
      s > static_cast<std::int64_t>(std::numeric_limits<Int>::max())) {
    fail(ErrorKind::validation, std::string("field '") + key + "' out of range");
  }
  return static_cast<Int>(s);
}

}  // namespace

ExperimentService::ExperimentService(std::shared_ptr<RecordRepository> store, const QuestionBank& bank)
    : store_(std::move(store)), bank_(bank) {}

std::shared_ptr<ExperimentService::Entry> ExperimentService::find(const std::string& id) const {
  std::lock_guard guard(registry_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(ErrorKind::not_found, "unknown session '" + id + "'");
  return it->second;
}

std::size_t ExperimentService::live_sessions() const {
  std::lock_guard guard(registry_mutex_);
  return sessions_.size();
}

void ExperimentService::finalize_if_due(Entry& entry) {
  if (!is_complete(entry.state) || entry.state.finalized) return;
  if (!store_) fail(ErrorKind::persistence, "record store unavailable");
  store_->append(to_record(entry.state));
  entry.state.finalized = true;
}

json ExperimentService::project(const SessionState& s) const {
  return {{"session_id", s.session_id},
          {"version", s.version},
          {"health", s.player.health},
          {"health_display", s.player.health_display()},
          {"gold_display", s.player.gold_display()},
          {"bonus_display", s.player.bonus_display ? json(*s.player.bonus_display) : json(nullptr)},
          {"gate_open", s.gate_open},
          {"solved", s.solved},
          {"answers", s.answers},
          {"finalized", s.finalized}};
}

HttpResult ExperimentService::create_session(const std::string& body) {
  try {
    json j = parse_body(body, {"gender", "age", "education"});
    Demographics d{optional_text(j, "gender"), optional_int<int>(j, "age"), optional_text(j, "education")};
    validate(d);
    if (!store_) return error_result(503, "unavailable", "record store unavailable; sessions cannot be saved");

    auto entry = std::make_shared<Entry>();
    {
      std::lock_guard guard(registry_mutex_);
      int version = assignment_counter_ % 2 == 0 ? 1 : 2;
      ++assignment_counter_;
      do {
        entry->state = start_session(d, version);
      } while (sessions_.count(entry->state.session_id));
      sessions_.emplace(entry->state.session_id, entry);
    }
    return {200, {{"session_id", entry->state.session_id}, {"version", entry->state.version},
                  {"state", project(entry->state)}}};
  } catch (const Error& e) {
    return error_result(e);
  }
}

HttpResult ExperimentService::get_session(const std::string& id) {
  try {
    auto entry = find(id);
    std::lock_guard guard(entry->mutex);
    finalize_if_due(*entry);
    return {200, {{"state", project(entry->state)}, {"available_tasks", available_tasks(entry->state)}}};
  } catch (const Error& e) {
    return error_result(e);
  }
}

HttpResult ExperimentService::get_question(const std::string& id, int n) {
  try {
    auto entry = find(id);
    std::lock_guard guard(entry->mutex);
    const FramedQuestion& q = bank_.question(n);
    const SessionState& s = entry->state;
    if (s.solved[n - 1]) fail(ErrorKind::already_answered, "question " + std::to_string(n) + " already answered");
    auto open = available_tasks(s);
    if (std::find(open.begin(), open.end(), n) == open.end()) {
      fail(ErrorKind::locked, "question " + std::to_string(n) + " is locked");
    }
    return {200, to_json(q.script(bank_.frame_for(s.version, n)))};
  } catch (const Error& e) {
    return error_result(e);
  }
}

HttpResult ExperimentService::answer(const std::string& id, int n, const std::string& body) {
  try {
    auto entry = find(id);
    json j = parse_body(body, {"choice", "response_time_ms"});
    if (!j.contains("choice")) fail(ErrorKind::validation, "missing field 'choice'");
    auto choice = optional_int<int>(j, "choice");
    if (!choice) fail(ErrorKind::validation, "field 'choice' must be 1 or 2");
    auto rt = optional_int<std::uint32_t>(j, "response_time_ms");

    std::lock_guard guard(entry->mutex);
    finalize_if_due(*entry);
    if (n < 1 || n > kTaskCount) fail(ErrorKind::not_found, "no question " + std::to_string(n));
    AnswerResult result = submit_answer(entry->state, n, *choice, rt, bank_);
    entry->state = std::move(result.state);
    finalize_if_due(*entry);
    return {200, {{"continuation", result.continuation},
                  {"effects", to_json(result.consequence)},
                  {"state", project(entry->state)}}};
  } catch (const Error& e) {
    return error_result(e);
  }
}

HttpResult ExperimentService::summary() {
  try {
    if (!store_) return error_result(503, "unavailable", "record store unavailable");
    auto v1 = store_->load(1);
    auto v2 = store_->load(2);
    return {200, analysis::to_json(analysis::build_report(v1, v2, bank_))};
  } catch (const Error& e) {
    return error_result(e);
  }
}

void ExperimentService::mount(httplib::Server& server, const std::optional<std::filesystem::path>& static_dir) {
  auto reply = [](httplib::Response& res, const HttpResult& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto question_number = [](const std::string& text) {
    try {
      std::size_t used = 0;
      int n = std::stoi(text, &used);
      return used == text.size() ? n : 0;
    } catch (const std::exception&) {
      return 0;
    }
  };

  server.Post("/api/v1/sessions", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, create_session(req.body));
  });
  server.Get(R"(/api/v1/sessions/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_session(req.matches[1]));
  });
  server.Get(R"(/api/v1/sessions/([^/]+)/questions/([^/]+))",
             [this, reply, question_number](const httplib::Request& req, httplib::Response& res) {
               reply(res, get_question(req.matches[1], question_number(req.matches[2])));
             });
  server.Post(R"(/api/v1/sessions/([^/]+)/questions/([^/]+)/answer)",
              [this, reply, question_number](const httplib::Request& req, httplib::Response& res) {
                reply(res, answer(req.matches[1], question_number(req.matches[2]), req.body));
              });
  server.Get("/api/v1/analysis/summary",
             [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, summary()); });
  if (static_dir) server.set_mount_point("/", static_dir->string());
}

}  // namespace framing
