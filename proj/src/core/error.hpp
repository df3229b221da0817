#pragma once

#include <stdexcept>
#include <string>

namespace og {

enum class ErrorCode {
  InvalidArgument,
  Dimension,
  NotHermitian,
  Rank,
  Unit,
  NotMember,
  SamplingExhausted,
  SolverIndeterminate,
  Parse,
  Unsupported,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace og
