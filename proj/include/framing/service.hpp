#pragma once

#include "framing/error.hpp"
#include "framing/question_bank.hpp"
#include "framing/record_store.hpp"
#include "framing/session.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace httplib {
class Server;
}

namespace framing {

struct HttpResult {
  int status = 200;
  nlohmann::json body;
};

/// Every library error maps to exactly one status code.
int http_status(ErrorKind kind) noexcept;

/// Session lifecycle behind the /api/v1 routes. Handlers are plain functions
/// of (path parameters, JSON body) so they can be driven without a socket;
/// mount() wires them into an HTTP server.
///
/// Live sessions are held in memory. Requests on one session are serialized
/// by a per-session mutex; distinct sessions proceed concurrently. Versions
/// alternate 1, 2, 1, ... in creation order.
class ExperimentService {
 public:
  /// A null store means the startup health check failed: session creation
  /// answers 503 so that nobody plays without their answers being saved.
  explicit ExperimentService(std::shared_ptr<RecordRepository> store,
                             const QuestionBank& bank = QuestionBank::embedded());

  HttpResult create_session(const std::string& body);
  HttpResult get_session(const std::string& id);
  HttpResult get_question(const std::string& id, int n);
  HttpResult answer(const std::string& id, int n, const std::string& body);
  HttpResult summary();

  /// Registers the routes; serves static_dir at "/" when given.
  void mount(httplib::Server& server, const std::optional<std::filesystem::path>& static_dir = std::nullopt);

  std::size_t live_sessions() const;

 private:
  struct Entry {
    std::mutex mutex;
    SessionState state;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  void finalize_if_due(Entry& entry);
  nlohmann::json project(const SessionState& s) const;

  std::shared_ptr<RecordRepository> store_;
  const QuestionBank& bank_;
  mutable std::mutex registry_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t assignment_counter_ = 0;
};

}  // namespace framing
