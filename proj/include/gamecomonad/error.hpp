#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gamecomonad {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed structure or formula text. Carries the 1-based line number
/// (0 when the input has no line structure).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string & what) :
        Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Two structures that must share a vocabulary do not.
class VocabularyMismatch : public Error {
public:
    using Error::Error;
};

/// A precondition on arguments was violated (k = 0, a non-total map, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A materialization or search exceeded its configured budget.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Coalgebra number requested for a structure that admits no coalgebra.
class NoCoalgebra : public Error {
public:
    using Error::Error;
};

/// Modal depth requested for a pointed structure with a reachable cycle.
class CyclicStructure : public Error {
public:
    using Error::Error;
};

} // namespace gamecomonad
