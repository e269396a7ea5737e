#pragma once

#include <stdexcept>
#include <string>

namespace sepwidth {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (bad dimension, hypothesis
/// violated, non-unit input, ...). The CLI maps this to exit status 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A geometric predicate landed within tolerance of a degenerate
/// configuration. Callers translate by a seeded jitter and retry.
class DegeneratePose : public Error {
 public:
  using Error::Error;
};

/// A statement that is a theorem was observed to fail. The CLI maps this to
/// exit status 4 and halts.
class FalsificationError : public Error {
 public:
  using Error::Error;
};

/// A randomized search exhausted its budget.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sepwidth
