#pragma once

#include <stdexcept>
#include <string>

namespace dynirr {

// Base of every error thrown by the library. The CLI maps the subclasses
// onto its exit codes (usage errors -> 2, resource errors -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in finite field") {}
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class DegeneratePolynomial : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Work or degree budget exceeded.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

// The dense oracle contradicted the character test. Never expected.
class OracleDiscrepancy : public Error {
 public:
  using Error::Error;
};

}  // namespace dynirr
