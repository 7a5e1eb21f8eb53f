#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topaction {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a structural law (functoriality, naturality, pointedness...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computed result failed a post-hoc check, e.g. an initial cover that is not initial.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Syntax or semantic error in a workspace file, carrying a 1-based position.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace topaction
