#pragma once

#include <stdexcept>
#include <string>

namespace ymdec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files or specs.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Non-manifold, non-closed or otherwise invalid combinatorics.
class TopologyError : public Error {
 public:
  using Error::Error;
};

class OrientationError : public TopologyError {
 public:
  using TopologyError::TopologyError;
};

// Caller violated an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotExtendableError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Singular value gap around the rank threshold is too small to trust.
class RankAmbiguityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ymdec
