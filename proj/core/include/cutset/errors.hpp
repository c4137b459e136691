#pragma once

#include <stdexcept>
#include <string>

namespace cutset {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A set description or numeric parameter was rejected.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// 0 or 1 is an isolated point of F, so no function with E(f) = F exists.
class HypothesisError : public ValidationError
{
public:
    using ValidationError::ValidationError;
};

/// A construction asked for more levels than the xi rule can represent.
class DepthError : public Error
{
public:
    using Error::Error;
};

/// A finite component family did not fit into the per-gap budget.
class BudgetExhausted : public Error
{
public:
    using Error::Error;
};

/// Requested derivative order exceeds the configured maximum.
class OrderError : public Error
{
public:
    using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InvariantViolation : public Error
{
public:
    using Error::Error;
};

} // namespace cutset
