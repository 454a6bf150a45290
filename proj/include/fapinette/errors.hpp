#pragma once

#include <stdexcept>
#include <string>

namespace fapinette {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input file could not be opened or read.
class IoError : public Error {
public:
  using Error::Error;
};

/// Malformed input that cannot be skipped (header mismatch, strict-mode row).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A data invariant was violated; indicates a bug upstream of the check.
class InvariantError : public Error {
public:
  using Error::Error;
};

/// Two lemmas share no material within the slot budget.
class NoAlternation : public Error {
public:
  using Error::Error;
};

/// The exact analogy check was asked to decide strings above its length bound.
class AnalogyUndecided : public Error {
public:
  using Error::Error;
};

}  // namespace fapinette
