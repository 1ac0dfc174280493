#pragma once

#include <stdexcept>
#include <string>

namespace mslln {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration (bad sigma, empty grid, unknown family).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Series or request too short for the operation.
class LengthError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed or empty after cleaning.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Input file lacks a required column or header.
class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace mslln
