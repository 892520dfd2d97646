#pragma once
#include <stdexcept>

namespace qpartial {

/// Base class for every error raised by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry validation
struct NonDivisibleError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };

// asymptotic optimization
struct OutOfDomainError : Error { using Error::Error; };
struct NoMinimumError : Error { using Error::Error; };

// reduced-model evolution
struct FractionalParityError : Error { using Error::Error; };

// sure-success schedule search
struct ExhaustedError : Error { using Error::Error; };

// full-simulator size cap
struct TooLargeError : Error { using Error::Error; };

// config / plan-file parsing
struct ConfigError : Error { using Error::Error; };

}  // namespace qpartial
