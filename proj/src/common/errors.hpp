#pragma once

#include <stdexcept>
#include <string>

namespace zh {

enum class ErrorCode {
  Domain,
  Accuracy,
  Consistency,
  Precondition,
  Convergence,
  Topology,
  Fit,
  Io,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a requested accuracy cannot be certified. Carries the two
// competing estimates so callers can report them.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate_a, double estimate_b)
      : Error(ErrorCode::Accuracy, what), a_(estimate_a), b_(estimate_b) {}
  double first_estimate() const noexcept { return a_; }
  double second_estimate() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace zh
