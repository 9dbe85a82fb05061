#pragma once

#include <stdexcept>
#include <string>

namespace discdep {

// Malformed or inconsistent input data (corpus records, attention files,
// predictions). Tools map this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an operation's precondition (bad sizes, missing gold,
// invalid head id, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace discdep
