#pragma once

#include <stdexcept>
#include <string>

namespace qaoab {

// Precondition violated by the caller (edge not in graph, bad p, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input exceeds what the dense or enumerative kernels are sized for.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed graph text; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& detail, int line, const std::string& source = {})
      : std::runtime_error((source.empty() ? "" : source + ":") +
                           (line > 0 ? "line " + std::to_string(line) + ": " : "") + detail),
        detail_(detail),
        line_(line) {}
  int line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
};

// Persisted file failed its header, version or checksum test.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that must hold by construction did not (e.g. an unmatched subgraph).
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qaoab
