#pragma once

#include <stdexcept>
#include <string>

namespace volform {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different variable lists.
class VariableMismatch : public Error {
 public:
  using Error::Error;
};

/// A name that is not a variable of the ring.
class UnknownVariable : public Error {
 public:
  using Error::Error;
};

/// An operation would leave the Laurent ring (negative power of a non-unit,
/// zero assigned to an invertible coordinate, division by a non-unit).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid chart presentation or point.
class ChartError : public Error {
 public:
  using Error::Error;
};

class NotTangent : public Error {
 public:
  using Error::Error;
};

class NotNilpotent : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVolumeForm : public Error {
 public:
  using Error::Error;
};

class GroupError : public Error {
 public:
  using Error::Error;
};

}  // namespace volform
