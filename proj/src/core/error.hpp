#pragma once

#include <stdexcept>
#include <string>

namespace gupbell {

enum class ErrorCode {
  InvalidArgument = 1,
  Dimension,
  NotHermitian,
  Numeric,
  Degenerate,
  Ambiguous,
  NotDichotomic,
  Undefined,
};

// Every failure raised by the core carries a code so the C layer can map it
// onto a status value without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gupbell
