#pragma once

#include <stdexcept>
#include <string>

namespace dirca {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadAlphabet : public Error {
 public:
  using Error::Error;
};

class AllZeroRule : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class PrefixTooShort : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (bad shapes, negative exponents, ...).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dirca
