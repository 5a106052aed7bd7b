#pragma once

#include <stdexcept>
#include <string>

namespace slopekit {

enum class ErrorKind {
  invalid_input,  // malformed or out-of-domain data
  precondition,   // operation called outside its admissible range
  hypothesis,     // a numerically checkable hypothesis of a bound fails
  inconsistency,  // two algebraic routes that must agree did not
};

/// Library error. `label` is a short stable tag (e.g. "fiber-degree-zero")
/// that tests and the CLI can match on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string label, const std::string& what)
      : std::runtime_error(label + ": " + what), kind_(kind), label_(std::move(label)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }

 private:
  ErrorKind kind_;
  std::string label_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string label, const std::string& what) {
  throw Error(kind, std::move(label), what);
}

inline void require(bool cond, ErrorKind kind, const char* label, const std::string& what) {
  if (!cond) fail(kind, label, what);
}

}  // namespace slopekit
