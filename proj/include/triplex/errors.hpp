#pragma once

#include <stdexcept>
#include <string>

namespace triplex {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid, inconsistent, or unusable input data. The CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

/// The computation is mathematically undefined for this input. CLI exit code 3.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class InvalidMatrix : public DataError {
 public:
  using DataError::DataError;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyMatrix : public DataError {
 public:
  using DataError::DataError;
};

class NoOverlap : public DataError {
 public:
  using DataError::DataError;
};

class AllZeroRow : public DataError {
 public:
  using DataError::DataError;
};

class LengthMismatch : public DataError {
 public:
  using DataError::DataError;
};

class ZeroVariance : public DataError {
 public:
  using DataError::DataError;
};

class InsufficientOverlap : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  using DataError::DataError;
};

class UnknownYear : public DataError {
 public:
  using DataError::DataError;
};

class BadShares : public DataError {
 public:
  using DataError::DataError;
};

class SchemeMismatch : public DataError {
 public:
  using DataError::DataError;
};

class DuplicateEntity : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateSpectrum : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

class NoRealEigenvalue : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

class DegenerateIndex : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

class NoConvergence : public DegeneracyError {
 public:
  using DegeneracyError::DegeneracyError;
};

}  // namespace triplex
