#pragma once

#include <stdexcept>
#include <string>

namespace tseq {

/// Base class of every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A power would exceed the configured magnitude guard (see ExponentGuard).
class ExponentTooLarge : public Error {
 public:
  using Error::Error;
};

/// A pairing was requested between an element and a character that do not
/// belong to matched group/dual ambients.
class MismatchedAmbient : public Error {
 public:
  using Error::Error;
};

/// A truncated p-adic value was asked for digits beyond its precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// The requested operation has no rule for this ambient/descriptor shape.
class UnsupportedAmbient : public Error {
 public:
  using Error::Error;
};

/// A nonzero target element was required.
class ZeroTarget : public Error {
 public:
  using Error::Error;
};

/// No index-gap splitting value exists for the given context (violated
/// pigeonhole precondition, i.e. a malformed context).
class NoValidGap : public Error {
 public:
  using Error::Error;
};

/// The supplied pattern/context does not match the shape required by the
/// selected inequality chain.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A character outside the supported exact classes was given to the
/// convergence classifier.
class UnsupportedCharacter : public Error {
 public:
  using Error::Error;
};

}  // namespace tseq
