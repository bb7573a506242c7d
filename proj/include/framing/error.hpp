#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace framing {

enum class ErrorKind {
  validation,
  not_found,
  locked,
  already_answered,
  incomplete,
  domain,
  configuration,
  persistence,
  corrupt_store,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace framing
