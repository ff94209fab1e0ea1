#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regsum {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position()` is the byte offset of the problem.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Power series inversion of a series with zero constant term.
class NonUnitError : public Error {
public:
    using Error::Error;
};

/// An operation was asked for a value outside its exact domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A coefficient beyond the known truncation order was requested.
class OrderExceeded : public Error {
public:
    using Error::Error;
};

/// A regularized derivative could not be verified within the summation budget.
class NotRegular : public Error {
public:
    NotRegular(const std::string& what, unsigned derivative_order)
        : Error(what), derivative_order_(derivative_order) {}

    unsigned derivative_order() const noexcept { return derivative_order_; }

private:
    unsigned derivative_order_;
};

/// Exact evaluation was demanded but no closed-form derivative data exists.
class ExactUnavailable : public Error {
public:
    using Error::Error;
};

} // namespace regsum
