#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toricdef {

/// Malformed or inconsistent user input. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parse failure in the polytope file format; carries the 1-based line number.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// The requested operation is not available for this input (e.g. dimension). CLI exit code 3.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal identity that must hold did not. CLI exit code 4.
class CorrectnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace toricdef
