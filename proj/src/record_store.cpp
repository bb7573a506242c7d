#include "framing/record_store.hpp"

#include "framing/error.hpp"
#include "framing/json_codec.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <utility>

namespace framing {

namespace {

class UniqueFd {
 public:
  explicit UniqueFd(int fd) : fd_(fd) {}
  UniqueFd(UniqueFd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  UniqueFd(const UniqueFd&) = delete;
  UniqueFd& operator=(const UniqueFd&) = delete;
  ~UniqueFd() {
    if (fd_ >= 0) ::close(fd_);
  }
  int get() const { return fd_; }

 private:
  int fd_;
};

class FileLock {
 public:
  FileLock(int fd, int mode) : fd_(fd) {
    while (::flock(fd_, mode) != 0) {
      if (errno != EINTR) fail(ErrorKind::persistence, std::string("flock failed: ") + std::strerror(errno));
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() { ::flock(fd_, LOCK_UN); }

 private:
  int fd_;
};

[[noreturn]] void io_error(const std::filesystem::path& path, const std::string& what) {
  fail(ErrorKind::persistence, path.string() + ": " + what + ": " + std::strerror(errno));
}

UniqueFd open_fd(const std::filesystem::path& path, int flags) {
  UniqueFd fd(::open(path.c_str(), flags | O_CLOEXEC, 0644));
  if (fd.get() < 0) io_error(path, "cannot open");
  return fd;
}

std::string read_from(int fd, std::uintmax_t offset, const std::filesystem::path& path) {
  std::string out;
  char buf[1 << 16];
  for (;;) {
    ssize_t n = ::pread(fd, buf, sizeof buf, static_cast<off_t>(offset + out.size()));
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error(path, "read failed");
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

ResponseRecord parse_line(std::string_view line, std::size_t line_no, const std::filesystem::path& path) {
  auto corrupt = [&](const std::string& why) -> ResponseRecord {
    fail(ErrorKind::corrupt_store, path.string() + ": line " + std::to_string(line_no) + ": " + why);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    return corrupt("not valid JSON");
  }
  ResponseRecord r;
  try {
    r = record_from_json(j);
  } catch (const Error& e) {
    return corrupt(e.what());
  }
  if (auto errors = validate_record(r); !errors.empty()) return corrupt(errors.front());
  return r;
}

/// Parses every complete line of bytes; first_line_no numbers the first one.
template <class Sink>
void scan_lines(std::string_view bytes, std::size_t first_line_no, const std::filesystem::path& path,
                Sink&& sink) {
  std::size_t line_no = first_line_no;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t lf = bytes.find('\n', pos);
    if (lf == std::string_view::npos) {
      fail(ErrorKind::corrupt_store,
           path.string() + ": line " + std::to_string(line_no) + ": unterminated record (partial write)");
    }
    sink(parse_line(bytes.substr(pos, lf - pos), line_no, path));
    pos = lf + 1;
    ++line_no;
  }
}

}  // namespace

std::string serialize_record(const ResponseRecord& r) { return to_json(r).dump(); }

RecordStore::RecordStore(std::filesystem::path path) : path_(std::move(path)) {
  UniqueFd fd = open_fd(path_, O_RDWR | O_CREAT);
  FileLock lock(fd.get(), LOCK_SH);
  catch_up_locked(fd.get());
}

void RecordStore::catch_up_locked(int fd) {
  std::string fresh = read_from(fd, scanned_bytes_, path_);
  std::size_t lines = 0;
  scan_lines(fresh, scanned_lines_ + 1, path_, [&](ResponseRecord r) {
    index_.emplace(r.session_id, r.record_id);
    ++lines;
  });
  scanned_bytes_ += fresh.size();
  scanned_lines_ += lines;
}

std::string RecordStore::append(const ResponseRecord& input) {
  if (auto errors = validate_record(input); !errors.empty()) {
    std::string msg = "invalid record:";
    for (const auto& e : errors) msg += " " + e + ";";
    fail(ErrorKind::validation, msg);
  }
  std::lock_guard guard(mutex_);
  if (auto it = index_.find(input.session_id); it != index_.end()) return it->second;

  UniqueFd fd = open_fd(path_, O_RDWR | O_APPEND | O_CREAT);
  FileLock lock(fd.get(), LOCK_EX);
  catch_up_locked(fd.get());
  if (auto it = index_.find(input.session_id); it != index_.end()) return it->second;

  ResponseRecord r = input;
  if (r.record_id.empty()) r.record_id = derive_record_id(r.session_id);
  std::string line = serialize_record(r) + "\n";

  std::size_t written = 0;
  while (written < line.size()) {
    ssize_t n = ::write(fd.get(), line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error(path_, "append failed");
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd.get()) != 0) io_error(path_, "fsync failed");

  index_.emplace(r.session_id, r.record_id);
  scanned_bytes_ += line.size();
  ++scanned_lines_;
  return r.record_id;
}

std::vector<ResponseRecord> RecordStore::load(std::optional<int> version) const {
  UniqueFd fd = open_fd(path_, O_RDONLY);
  FileLock lock(fd.get(), LOCK_SH);
  std::string bytes = read_from(fd.get(), 0, path_);
  std::vector<ResponseRecord> out;
  scan_lines(bytes, 1, path_, [&](ResponseRecord r) {
    if (!version || r.version == *version) out.push_back(std::move(r));
  });
  return out;
}

bool RecordStore::contains(const std::string& session_id) const {
  std::lock_guard guard(mutex_);
  return index_.count(session_id) != 0;
}

std::size_t RecordStore::size() const {
  std::lock_guard guard(mutex_);
  return index_.size();
}

DocumentSchemaExport export_document_schema(std::span<const ResponseRecord> records) {
  DocumentSchemaExport out;
  for (const auto& r : records) {
    nlohmann::ordered_json doc;
    doc["_id"] = {{"$oid", r.record_id.empty() ? derive_record_id(r.session_id) : r.record_id}};
    doc["gender"] = r.gender;
    if (r.age) doc["age"] = *r.age;
    doc["education"] = r.education;
    doc["answers"] = r.answers;
    (r.version == 1 ? out.v1 : out.v2) += doc.dump() + "\n";
  }
  return out;
}

void write_document_schema(std::span<const ResponseRecord> records, const std::filesystem::path& dir) {
  auto exported = export_document_schema(records);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::persistence, dir.string() + ": " + ec.message());
  for (const auto& [name, body] : {std::pair{"answers_v1.jsonl", &exported.v1}, std::pair{"answers_v2.jsonl", &exported.v2}}) {
    std::ofstream os(dir / name, std::ios::binary | std::ios::trunc);
    os << *body;
    if (!os) fail(ErrorKind::persistence, (dir / name).string() + ": write failed");
  }
}

}  // namespace framing
