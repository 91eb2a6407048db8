#pragma once

#include <stdexcept>
#include <string>

namespace hypgeo {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad data handed to us: wrong dimensions, malformed files, unknown fixtures.
// The CLI maps these to exit code 2.
struct InputError : Error {
    using Error::Error;
};

// Mathematically out-of-domain requests (valid syntax, invalid values).
// The CLI maps these to exit code 3.
struct DomainError : Error {
    using Error::Error;
};

struct DimensionMismatch : InputError {
    using InputError::InputError;
};

struct InvalidPoint : InputError {
    using InputError::InputError;
};

// kappa >= 1 where a strict bound kappa < 1 is required.
struct CurvatureTooLarge : DomainError {
    using DomainError::DomainError;
};

// Meridian length below e^3 * pi.
struct MeridianTooShort : DomainError {
    using DomainError::DomainError;
};

// gcd(|p|,|q|) > 1 where a primitive class is required.
struct NotPrimitive : DomainError {
    using DomainError::DomainError;
};

// A required relation between move parameters does not hold.
struct ConstraintViolated : DomainError {
    using DomainError::DomainError;
};

}  // namespace hypgeo
