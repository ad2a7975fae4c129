#pragma once
#include <stdexcept>
#include <string>

namespace sticky {

// All recoverable failures are reported through typed exceptions so callers
// (and the experiment driver) can attribute a failed run to its cause.

struct InvalidTailSlope : std::runtime_error {
  explicit InvalidTailSlope(const std::string& msg) : std::runtime_error(msg) {}
};

struct TooFewPoints : std::runtime_error {
  explicit TooFewPoints(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonIntegrable : std::runtime_error {
  explicit NonIntegrable(const std::string& msg) : std::runtime_error(msg) {}
};

// Rejection-sampling prefilter exceeded the consecutive-rejection cap.
struct RsLoopStall : std::runtime_error {
  explicit RsLoopStall(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyAxis : std::runtime_error {
  explicit EmptyAxis(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidShape : std::runtime_error {
  explicit InvalidShape(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ValidationError : std::runtime_error {
  std::string field;
  ValidationError(const std::string& field_, const std::string& msg)
      : std::runtime_error(field_ + ": " + msg), field(field_) {}
};

// An all-constant trace has zero variance; autocorrelation is undefined.
struct DegenerateTrace : std::runtime_error {
  explicit DegenerateTrace(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sticky
