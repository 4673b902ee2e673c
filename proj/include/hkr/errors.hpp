#pragma once

#include <stdexcept>
#include <string>

namespace hkr {

// Caller-side violation: bad input, inapplicable move, unmet precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Supplied structure data is not a valid (ribbon, unimodular) Hopf algebra.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent computations disagree; indicates a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public PreconditionError {
 public:
  ParseError(int line, int column, const std::string& msg)
      : PreconditionError("line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace hkr
