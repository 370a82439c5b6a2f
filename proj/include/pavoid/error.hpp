#pragma once

#include <stdexcept>
#include <string>

namespace pavoid {

/// Base for every error raised by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (permutations, family names, grid triples).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A permutation that does not belong to the requested avoidance family.
class NotAMember : public Error {
 public:
  using Error::Error;
};

/// Exhaustive work would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace pavoid
