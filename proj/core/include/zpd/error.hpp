#pragma once

#include <stdexcept>
#include <string>

namespace zpd {

enum class ErrorKind {
  input,             // malformed files, bad flags, violated input contracts
  domain,            // argument outside the mathematical domain
  precondition,      // documented precondition of an operation violated
  not_found,         // missing file
  integrity,         // cache version/checksum mismatch
  incomplete_table,  // zero table does not reach the height a sum needs
  numeric_budget,    // tolerance or certificate could not be met
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::domain: return "domain";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::integrity: return "integrity";
    case ErrorKind::incomplete_table: return "incomplete-table";
    case ErrorKind::numeric_budget: return "numeric-budget";
  }
  return "unknown";
}

}  // namespace zpd
