#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lexiplan {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shapes of instance, rewards, and policy do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A scalar argument is outside its documented range (rank, tau, eps, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public Error {
public:
    using Error::Error;
};

// Exhaustive enumeration would exceed the configured policy budget.
class BudgetError : public Error {
public:
    BudgetError(const std::string& message, std::uint64_t count)
        : Error(message), count_(count) {}

    // Policy count that triggered the error; UINT64_MAX when it overflowed.
    std::uint64_t count() const { return count_; }

private:
    std::uint64_t count_;
};

}  // namespace lexiplan
