#pragma once

#include "framing/response_record.hpp"

#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace framing {

/// Persistence seam used by the service. RecordStore is the local
/// implementation; a remote document store would sit behind the same calls.
class RecordRepository {
 public:
  virtual ~RecordRepository() = default;

  /// Returns the record id. A session that is already stored returns its
  /// existing id and writes nothing.
  virtual std::string append(const ResponseRecord& r) = 0;
  /// Records of one version (or all when empty), in append order.
  virtual std::vector<ResponseRecord> load(std::optional<int> version = std::nullopt) const = 0;
};

/// Append-only JSON-lines file, one record per LF-terminated line.
///
/// Writers take an exclusive flock for the duration of an append and first
/// catch up on lines other processes may have written, so a session id is
/// stored at most once even with several writers. Opening a file whose last
/// line is unterminated or unparsable fails with a corrupt_store error that
/// names the line.
class RecordStore final : public RecordRepository {
 public:
  explicit RecordStore(std::filesystem::path path);

  std::string append(const ResponseRecord& r) override;
  std::vector<ResponseRecord> load(std::optional<int> version = std::nullopt) const override;

  bool contains(const std::string& session_id) const;
  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  void catch_up_locked(int fd);

  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::string> index_;  // session_id -> record_id
  std::uintmax_t scanned_bytes_ = 0;
  std::size_t scanned_lines_ = 0;
};

/// One canonical store line (no trailing LF).
std::string serialize_record(const ResponseRecord& r);

/// The two collections of the document schema: one JSON document per line
/// with exactly _id, gender, age, education, answers in that order. Age is
/// omitted when unknown; response times and version never appear.
struct DocumentSchemaExport {
  std::string v1;
  std::string v2;
};

DocumentSchemaExport export_document_schema(std::span<const ResponseRecord> records);

/// Writes answers_v1.jsonl and answers_v2.jsonl into dir.
void write_document_schema(std::span<const ResponseRecord> records, const std::filesystem::path& dir);

}  // namespace framing
