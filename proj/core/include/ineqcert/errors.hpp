#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ineqcert {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    enum class Kind { Syntax, UnknownIdentifier, NonIntegerExponent };

    ParseError(Kind kind, std::size_t offset, const std::string& message)
        : Error(message + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

/// log/sqrt of an out-of-domain argument, division by zero, or an enclosure touching a singularity.
class DomainError : public Error {
public:
    using Error::Error;
};

class NotPolynomial : public Error {
public:
    using Error::Error;
};

/// A precondition of an operation does not hold for the supplied inputs.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class NonZeroMean : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class SideConditionViolated : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class DegenerateIntegrator : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class DiscontinuousAtJump : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class DiscontinuityError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class OutOfInterval : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InvalidRange : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NonConvergent : public Error {
public:
    using Error::Error;
};

class UnknownInequality : public Error {
public:
    using Error::Error;
};

} // namespace ineqcert
