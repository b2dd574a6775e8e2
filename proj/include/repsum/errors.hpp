#pragma once

#include <stdexcept>
#include <string>

namespace repsum {

/// Base of every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A memory, size or time cap would be exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class NoPrimeFound : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (wrong solution shape, bad interval...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace repsum
