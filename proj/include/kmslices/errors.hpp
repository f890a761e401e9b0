#pragma once

#include <stdexcept>
#include <string>

namespace kms
{

/// Malformed or out-of-range input (bad vectors, wrong shapes, unparsable text).
class input_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition of an operation does not hold
/// (division by zero, non-invariant dressing, failed conicity, ...).
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// The cone-point map was requested for a pair that fails the conicity condition.
class conicity_error : public domain_error
{
public:
    using domain_error::domain_error;
};

/// Enumeration or computation exceeded its resource budget.
class resource_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace kms
