#pragma once

#include "framing/response_record.hpp"

#include <json.hpp>

#include <filesystem>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <unistd.h>

namespace test_support {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("framing-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline framing::ResponseRecord random_record(std::mt19937_64& rng, const std::string& session_id) {
  framing::ResponseRecord r;
  r.session_id = session_id;
  r.record_id = framing::derive_record_id(session_id);
  r.version = 1 + static_cast<int>(rng() % 2);
  static const char* genders[] = {"", "female", "male", "non-binary", "Ünïcødé \"quoted\""};
  static const char* educations[] = {"", "high school", "university", "phd"};
  r.gender = genders[rng() % 5];
  r.education = educations[rng() % 4];
  if (rng() % 4 != 0) r.age = static_cast<int>(rng() % 131);
  for (int i = 0; i < 7; ++i) {
    r.answers.push_back(1 + static_cast<int>(rng() % 2));
    if (rng() % 3 == 0) {
      r.response_times_ms.push_back(std::nullopt);
    } else {
      r.response_times_ms.push_back(static_cast<std::uint32_t>(rng() % 600000));
    }
  }
  r.created_at = framing::Timestamp(std::chrono::seconds(1600000000 + rng() % 100000000));
  return r;
}

/// Independent check of one exported document line: exactly the keys
/// _id, gender, [age], education, answers in that order, with an ObjectId
/// shaped _id and seven answers in {1, 2}. Returns an empty string when valid.
inline std::string schema_violation(const std::string& line) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(line);
  } catch (const std::exception&) {
    return "not JSON";
  }
  if (!doc.is_object()) return "not an object";
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  std::vector<std::string> with_age{"_id", "gender", "age", "education", "answers"};
  std::vector<std::string> without_age{"_id", "gender", "education", "answers"};
  if (keys != with_age && keys != without_age) return "unexpected key set or order";
  const auto& id = doc["_id"];
  if (!id.is_object() || id.size() != 1 || !id.contains("$oid") || !id["$oid"].is_string()) return "bad _id";
  if (!std::regex_match(id["$oid"].get<std::string>(), std::regex("[0-9a-f]{24}"))) return "bad ObjectId";
  if (!doc["gender"].is_string() || !doc["education"].is_string()) return "bad text field";
  if (doc.contains("age") && !doc["age"].is_number_integer()) return "bad age";
  const auto& answers = doc["answers"];
  if (!answers.is_array() || answers.size() != 7) return "answers length";
  for (const auto& a : answers) {
    if (!a.is_number_integer() || (a.get<int>() != 1 && a.get<int>() != 2)) return "answer value";
  }
  return {};
}

}  // namespace test_support
