#pragma once

#include <stdexcept>
#include <string>

namespace tilt {

enum class ErrorCode {
  invalid_argument = 2,
  config = 3,
  io = 4,
  size_mismatch = 5,
  divergence = 6,
  not_nested = 7,
  missing_input = 8,
  malformed_input = 9,
  internal = 10,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, const std::string& what, ErrorCode code = ErrorCode::invalid_argument) {
  if (!ok) throw Error(code, what);
}

}  // namespace tilt
