#pragma once

#include <stdexcept>
#include <string>

namespace peq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad caller input: malformed angle strings, out-of-range options, violated preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A combinatorial gate rejected the angle pair (conjugate limbs, pinched curve, ...).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Floating point machinery gave up (lost branch, collided critical values).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input. `line` is 1-based; 0 when the file is empty.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace peq
