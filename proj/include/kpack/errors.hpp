#pragma once

#include <stdexcept>
#include <string>

namespace kpack {

/// Argument outside the mathematical domain of an operation (g < 3, N < 7, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (k, g) with k not dividing 6(g-2).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural problem with a polygon complex (unpaired label, zero label, ...).
class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ComplexError {
 public:
  ParseError(const std::string& what, int line, int column)
      : ComplexError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Operation precondition violated (ineligible graft site, bad voltages, non-extremal input, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resource cap was hit (coset limit, search bound). Not a mathematical failure.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search ran out of candidates where one was expected to exist.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric construction missed its tolerance (a bug signal, not bad input).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kpack
