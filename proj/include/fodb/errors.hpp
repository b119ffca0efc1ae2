#pragma once

#include <stdexcept>
#include <string>

namespace fodb {

// Parse failure with a 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Violated structural or database invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Illegal structural operation (shape, clause, or proviso violation).
class OperationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation contract violation (non-sentence input).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fodb
