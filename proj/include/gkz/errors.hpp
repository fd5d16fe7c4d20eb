#pragma once

#include <stdexcept>
#include <string>

namespace gkz {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed user input (bad fraction string, ragged point list, length mismatch, ...).
class InvalidInput : public Error {
public:
  using Error::Error;
};

// The points do not generate Z^n. `factor` is the first invariant factor != 1
// (0 when the point matrix has rank < n).
class NotGenerating : public InvalidInput {
public:
  NotGenerating(long long factor, const std::string& what)
      : InvalidInput(what), factor_(factor) {}
  long long factor() const noexcept { return factor_; }

private:
  long long factor_;
};

class DuplicatePoint : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

// Checked 64-bit integer arithmetic overflowed during lattice computations.
class Overflow : public Error {
public:
  using Error::Error;
};

// f is not of the form x_n * g (and no unimodular change of coordinates makes it so).
class StructureError : public Error {
public:
  using Error::Error;
};

// A Pochhammer factor vanishes or has a pole for the requested exponent range.
class PochhammerPole : public Error {
public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Resonant alpha passed where nonresonance is required.
class ResonantError : public Error {
public:
  using Error::Error;
};

// A windowed dimension did not stabilize between consecutive bounds.
class NotStabilized : public Error {
public:
  using Error::Error;
};

}  // namespace gkz
