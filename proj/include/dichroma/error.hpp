#pragma once

#include <stdexcept>
#include <string>

namespace dichroma {

/// Raised when a caller violates an operation's precondition (bad vertex id,
/// probability out of range, malformed file, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace dichroma
