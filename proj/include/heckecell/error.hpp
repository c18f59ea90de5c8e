#pragma once

#include <stdexcept>
#include <string>

namespace heckecell {

// Base of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: configs, representation files, weight vectors.
class InputError : public Error {
 public:
  using Error::Error;
};

// A mathematical identity failed on data that passed input validation.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// Should be unreachable; indicates an arithmetic or bookkeeping bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace heckecell
