#pragma once

#include <stdexcept>
#include <string>

namespace isoplab {

/// Base class for every error raised by the library. `exit_code()` is the
/// process status the command-line front end reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 2; }
};

/// Malformed group, element, word or set-descriptor text.
class ParseError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// A fixed-width coordinate would have overflowed. Never wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// A ball or enumeration outgrew its configured element cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// No radius satisfies Card(B(e,r)) > v (finite group, v >= Card(group)).
class Unattainable : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// A construction that must always succeed did not. Firing this means a
/// verified statement has been falsified.
class InternalContradiction : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

}  // namespace isoplab
