#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace tilelab {

/// Base for every domain-level failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad grid entries, bad polynomial text, argument outside
/// an operation's stated domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidGrid : public DomainError {
 public:
  enum class Reason { DuplicateTile, MissingBlank, MultipleBlanks, ValueOutOfRange, BadShape };

  InvalidGrid(Reason reason, const std::string& what) : DomainError(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// A strict move pushed the blank off the board. `step()` is the 1-based
/// position inside a sequence, when the move came from one.
class IllegalMove : public Error {
 public:
  explicit IllegalMove(std::optional<std::size_t> step = std::nullopt)
      : Error(step ? "illegal move at step " + std::to_string(*step) : std::string("illegal move")),
        step_(step) {}
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  std::optional<std::size_t> step_;
};

class Unsolvable : public Error {
 public:
  Unsolvable() : Error("grid is not reachable from the goal state") {}
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// A configured cap (states, nodes, sequences, wall clock) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class KindMismatch : public Error {
 public:
  KindMismatch() : Error("polynomial coefficient kinds differ") {}
};

class NotARoot : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace tilelab
