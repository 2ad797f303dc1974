#pragma once

#include <stdexcept>
#include <string>

namespace firecluster {

// Input outside an operation's domain (bad coordinate, empty list, t < 1, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Invalid configuration or ingest specification (missing column, bad bound).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input data; carries the 1-based line number when known.
class DataError : public std::runtime_error {
public:
  DataError(const std::string &message, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Filesystem failure; the message includes the offending path.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Broken engine precondition. Indicates a bug in the caller, not bad data.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace firecluster
