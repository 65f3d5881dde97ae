#pragma once

#include <stdexcept>
#include <string>

namespace numrad {

/// Base of all library exceptions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation (non-square, mismatched sizes).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A numerical precondition failed (non-Hermitian input, non-unit vector, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace numrad
