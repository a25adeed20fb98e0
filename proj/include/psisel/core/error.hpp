#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psisel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A node index or set does not belong to the universe it is used with.
class UniverseMismatch : public Error {
public:
    using Error::Error;
};

/// Caller-supplied data violates a documented precondition.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Positive and negative seeds overlap.
class ContradictorySeeds : public Error {
public:
    using Error::Error;
};

/// An exhaustive routine was asked to enumerate more free nodes than it supports.
class DeskScaleLimit : public Error {
public:
    using Error::Error;
};

/// A labeling required to be total has undefined entries.
class IncompleteLabeling : public Error {
public:
    using Error::Error;
};

/// A symmetrized oracle produced a value that no submodular input can produce.
class NotSubmodular : public Error {
public:
    using Error::Error;
};

/// A construction is undefined for the given input (e.g. zero or infinite strength).
class ConstructionUndefined : public Error {
public:
    using Error::Error;
};

/// Integer arithmetic would leave the 64-bit range.
class ArithmeticOverflow : public Error {
public:
    using Error::Error;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Class mass normalization cannot rescale a column with zero mass.
class DegenerateNormalization : public Error {
public:
    using Error::Error;
};

/// Malformed input file content. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace psisel
