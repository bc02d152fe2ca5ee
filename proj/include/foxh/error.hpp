#pragma once

#include <stdexcept>
#include <string>

namespace foxh {

enum class ErrorKind {
  invalid_params,      // malformed HParams or other input data
  hypothesis_failure,  // a theorem hypothesis or admissibility condition fails
  numerical_failure,   // quadrature or truncation could not meet its target
  pole,                // evaluation point hits a pole
  domain               // argument outside the supported domain
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_params: return "invalid_params";
    case ErrorKind::hypothesis_failure: return "hypothesis_failure";
    case ErrorKind::numerical_failure: return "numerical_failure";
    case ErrorKind::pole: return "pole";
    case ErrorKind::domain: return "domain";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Short stable identifier, e.g. "m_exceeds_q" or "strip_boundary".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string code, const std::string& what) {
  throw Error(kind, std::move(code), what);
}

}  // namespace foxh
