#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apt {

/// Base class of all errors raised by the toolkit.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An analysis was asked to run on an input violating its precondition
/// (unbounded net, nondeterministic lts, unreachable states, ...).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// A configured exploration limit (state count, cycle count, place cap) was hit.
class LimitExceeded : public Error {
  public:
    using Error::Error;
};

/// Malformed model or command-line input.
class InputError : public Error {
  public:
    using Error::Error;
};

class ParseError : public InputError {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace apt
