#pragma once

#include <stdexcept>
#include <string>

namespace seizcnn {

// Values double as CLI exit codes.
enum class ErrorKind : int {
  usage = 1,
  data = 2,
  numeric = 3,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_usage_error(const std::string& message) {
  throw Error(ErrorKind::usage, message);
}

[[noreturn]] inline void throw_data_error(const std::string& message) {
  throw Error(ErrorKind::data, message);
}

[[noreturn]] inline void throw_numeric_error(const std::string& message) {
  throw Error(ErrorKind::numeric, message);
}

}  // namespace seizcnn
