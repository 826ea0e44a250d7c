#pragma once

#include <stdexcept>
#include <string>

namespace torloop {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: unparsable JSON, bad expression text, wrong shapes.
class InputError : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition does not hold (inverse of zero, elements from
// different setups, a realized matrix that is not an automorphism, ...).
class AlgebraError : public Error {
 public:
  using Error::Error;
};

}  // namespace torloop
