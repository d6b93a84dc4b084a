#pragma once

#include <stdexcept>
#include <string>

namespace chemostab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched vector or matrix sizes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A model document parsed but violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Eigensolver failure, singular system, or similar numerical breakdown.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Newton or closed-form steady-state computation failed.
class SteadyStateError : public Error {
public:
    using Error::Error;
};

/// Syntax error in a .crn or .model document. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::string message, std::string snippet)
        : Error(format(line, column, message)),
          line_(line),
          column_(column),
          message_(std::move(message)),
          snippet_(std::move(snippet)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& snippet() const noexcept { return snippet_; }

private:
    static std::string format(int line, int column, const std::string& message) {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    int line_;
    int column_;
    std::string message_;
    std::string snippet_;
};

}  // namespace chemostab
