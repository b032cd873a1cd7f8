#pragma once

#include <stdexcept>
#include <string>

namespace etaq {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

// Series inversion or modular inversion of a non-unit.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

// A rigorous check needs more coefficients than the caller allowed.
class PrecisionShortfall : public Error {
 public:
  using Error::Error;
};

// The input is not the reduction of a level-1 form of the declared weight.
class NotModular : public Error {
 public:
  using Error::Error;
};

}  // namespace etaq
