#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace framing {

using Timestamp = std::chrono::sys_seconds;

/// "2021-06-01T12:00:00Z"
std::string format_timestamp(Timestamp t);
Timestamp parse_timestamp(std::string_view text);
Timestamp now_utc();

/// One respondent's finalized answers. Kept representable when invalid so
/// that validate_record can report what is wrong.
struct ResponseRecord {
  std::string record_id;
  std::string session_id;
  int version = 0;
  std::string gender;
  std::optional<int> age;
  std::string education;
  std::vector<int> answers;
  std::vector<std::optional<std::uint32_t>> response_times_ms;
  Timestamp created_at{};

  bool operator==(const ResponseRecord&) const = default;
};

/// 24 lower-case hex characters derived from the session id, shaped like a
/// document ObjectId.
std::string derive_record_id(std::string_view session_id);

/// Empty when the record is valid; otherwise one message per problem.
std::vector<std::string> validate_record(const ResponseRecord& r);

}  // namespace framing
