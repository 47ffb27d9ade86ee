#pragma once

#include <stdexcept>
#include <string>

namespace jms {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration did not meet its tolerance within the term budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// An intermediate exponential would leave the double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A denominator or pivot vanished at the evaluation point. `where` names the
/// offending subexpression.
class SingularityError : public Error {
 public:
  SingularityError(std::string where, const std::string& what)
      : Error(what + " [" + where + "]"), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace jms
