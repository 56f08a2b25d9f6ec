#pragma once

#include <stdexcept>
#include <string>

namespace njc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// All-zero tuple handed to the C^(n) ratio.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Tuple length / sign-pattern size outside [2, cap].
class OutOfRange : public Error {
 public:
  using Error::Error;
};

class UnsupportedExponent : public Error {
 public:
  using Error::Error;
};

// A closed form was requested below the dimension it is known for.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NoClosedForm : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace njc
