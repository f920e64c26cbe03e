#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schemata {

/// A universe element. Universes are always 0..n-1.
using Element = int;

/// Error with a source position, thrown by the structure and scheme parsers.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                             ": " + msg),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Semantic error: well-formed syntax carrying an invalid meaning
/// (arity mismatch, out-of-range element, illegal instruction for the mode, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Raised when an operation is asked to do something its semantics forbids,
/// e.g. evaluating a scheme whose nested test captures outer arrays under
/// standard semantics.
class ModeError : public std::runtime_error {
public:
    explicit ModeError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

}  // namespace schemata
