#ifndef SGFRAME_ERROR_HPP
#define SGFRAME_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sgf {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: out-of-range indices, bad sizes, inconsistent shapes.
class InputError : public Error {
public:
  using Error::Error;
};

/// An operation that needs a connected graph received a disconnected one.
class ConnectivityError : public Error {
public:
  using Error::Error;
};

/// Invalid combination of options (r-schedule, variant, missing filters).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A numerical routine failed or a built object failed verification.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Malformed file contents.
class ParseError : public Error {
public:
  using Error::Error;
};

/// File system failure (missing file, unwritable path).
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace sgf

#endif // SGFRAME_ERROR_HPP
