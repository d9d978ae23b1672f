#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hvl {

enum class ErrorCode {
  InvalidArgument,
  DomainError,
  NonFinite,
  SingularAtOrigin,
  ZeroLambda,
  EmptyArc,
  IterationCapReached,
  ZeroSymbol,
  DegenerateWitness,
  SelectionExhausted,
  PrecisionFloor,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Power iteration stopped at its cap. The last estimate is still a valid lower bound.
class IterationCapReached : public Error {
 public:
  IterationCapReached(double last_estimate, int iterations)
      : Error(ErrorCode::IterationCapReached,
              "power iteration reached its cap after " + std::to_string(iterations) +
                  " iterations"),
        last_estimate_(last_estimate),
        iterations_(iterations) {}

  double last_estimate() const noexcept { return last_estimate_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_estimate_;
  int iterations_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCode::InvalidArgument, message);
}

}  // namespace hvl
