#ifndef MAGVAC_ERRORS_HPP
#define MAGVAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace magvac {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested exactly at a pole (e.g. zeta at z = 1).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Configured size limit exceeded (Hermite order, table size).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Numerical routine could not reach its accuracy target.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration, input file, or option set.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace magvac

#endif  // MAGVAC_ERRORS_HPP
