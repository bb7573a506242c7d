#include "framing/error.hpp"

namespace framing {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::locked: return "locked";
    case ErrorKind::already_answered: return "already_answered";
    case ErrorKind::incomplete: return "incomplete";
    case ErrorKind::domain: return "domain";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::persistence: return "persistence";
    case ErrorKind::corrupt_store: return "corrupt_store";
  }
  return "unknown";
}

}  // namespace framing
