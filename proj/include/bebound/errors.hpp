#pragma once

#include <stdexcept>
#include <string>

namespace bebound {

/// A precondition on an argument was violated (bad parameter, bad grammar).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bebound
