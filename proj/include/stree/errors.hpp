#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stree {

// Base for every error raised by the library. Callers that only care about
// "bad data vs. bug" can catch this and report what().
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record. line is 1-based; 0 when not file-backed.
class IngestError : public Error {
 public:
  IngestError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant (e.g. basket mass != edge count).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Caller passed arguments outside an operation's contract.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace stree
