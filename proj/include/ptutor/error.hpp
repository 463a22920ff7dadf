#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptutor {

/// Base of every error raised by the tutor engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula string failed to lex or parse.
class MalformedFormula : public Error {
 public:
  MalformedFormula(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IncompleteProof : public Error {
 public:
  using Error::Error;
};

class InvalidTrace : public Error {
 public:
  using Error::Error;
};

class NoGoalState : public Error {
 public:
  using Error::Error;
};

class BankIncomplete : public Error {
 public:
  using Error::Error;
};

/// The command is not legal in the session's current phase.
class WrongPhase : public Error {
 public:
  using Error::Error;
};

class SkipLimitReached : public Error {
 public:
  using Error::Error;
};

/// A request referenced something that does not exist or was not well formed
/// (unknown node, unknown rule name, bad field).
class InvalidRequest : public Error {
 public:
  using Error::Error;
};

class IncompletePhase : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  using Error::Error;
};

}  // namespace ptutor
