#pragma once

#include <stdexcept>
#include <string>

namespace pmfix {

/// Base class for every error the library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point is outside the space's declared domain, or an iterate left it.
struct DomainError : Error {
    using Error::Error;
};

/// Piecewise expression evaluation failed (division by zero, unbound variable).
struct EvalError : Error {
    using Error::Error;
};

/// Rejection sampling hit its attempt cap without producing a valid table.
struct GenerationExhausted : Error {
    using Error::Error;
};

/// Syntax error with source location and the token set that would have been accepted.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    std::string expected;

    ParseError(const std::string& msg, int line_, int column_, std::string expected_ = {})
        : Error(msg + " at line " + std::to_string(line_) + ", column " + std::to_string(column_) +
                (expected_.empty() ? std::string{} : " (expected " + expected_ + ")")),
          line(line_),
          column(column_),
          expected(std::move(expected_)) {}
};

/// Structurally valid input that violates a semantic rule of the config language.
struct ValidationError : Error {
    int line = 0;
    int column = 0;

    explicit ValidationError(const std::string& msg, int line_ = 0, int column_ = 0)
        : Error(line_ > 0 ? msg + " at line " + std::to_string(line_) + ", column " + std::to_string(column_)
                          : msg),
          line(line_),
          column(column_) {}
};

/// Bad command-line invocation.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace pmfix
