#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace kelvin {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument: violated precondition, malformed input file, bad grid size.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numeric evaluation left the representable range: non-finite samples,
/// evaluation point outside an extension, time beyond the extension budget.
class NumericError : public Error {
public:
    using Error::Error;
};

/// An iterative method stopped before meeting its tolerance.
class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, double residual)
        : NumericError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A structural identity of the integral extension was breached.
class InvariantError : public NumericError {
public:
    InvariantError(const std::string& what, std::string identity, int segment, double deviation)
        : NumericError(what), identity_(std::move(identity)), segment_(segment), deviation_(deviation) {}
    const std::string& identity() const noexcept { return identity_; }
    int segment() const noexcept { return segment_; }
    double deviation() const noexcept { return deviation_; }

private:
    std::string identity_;
    int segment_;
    double deviation_;
};

/// Syntax or semantic error in a function expression; offset is a byte index into the source.
class ParseError : public InvalidArgument {
public:
    ParseError(const std::string& what, std::size_t offset)
        : InvalidArgument(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace kelvin
