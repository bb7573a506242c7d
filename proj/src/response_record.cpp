#include "framing/response_record.hpp"

#include "framing/error.hpp"
#include "framing/question_bank.hpp"

#include <ctime>

namespace framing {

std::string format_timestamp(Timestamp t) {
  std::time_t secs = t.time_since_epoch().count();
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  std::string s(text);
  std::tm tm{};
  const char* end = strptime(s.c_str(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  if (end == nullptr || *end != '\0') fail(ErrorKind::validation, "malformed timestamp '" + s + "'");
  return Timestamp(std::chrono::seconds(timegm(&tm)));
}

Timestamp now_utc() {
  return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

std::string derive_record_id(std::string_view session_id) {
  return sha256_hex(session_id).substr(0, 24);
}

std::vector<std::string> validate_record(const ResponseRecord& r) {
  std::vector<std::string> errors;
  if (r.session_id.empty()) errors.emplace_back("missing session id");
  if (r.version != 1 && r.version != 2) {
    errors.push_back("version must be 1 or 2, got " + std::to_string(r.version));
  }
  if (r.age && (*r.age < 0 || *r.age > 130)) {
    errors.push_back("age " + std::to_string(*r.age) + " outside [0, 130]");
  }
  if (r.answers.size() != kTaskCount) {
    errors.push_back("answers must have exactly 7 entries, got " + std::to_string(r.answers.size()));
  }
  for (std::size_t i = 0; i < r.answers.size(); ++i) {
    int a = r.answers[i];
    if (a == 0) {
      errors.push_back("unanswered slot " + std::to_string(i + 1));
    } else if (a != 1 && a != 2) {
      errors.push_back("answer " + std::to_string(i + 1) + " must be 1 or 2, got " + std::to_string(a));
    }
  }
  if (r.response_times_ms.size() != kTaskCount) {
    errors.push_back("response_times_ms must have exactly 7 entries, got " +
                     std::to_string(r.response_times_ms.size()));
  }
  return errors;
}

}  // namespace framing
