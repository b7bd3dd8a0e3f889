#pragma once

#include <stdexcept>
#include <string>

namespace fpl {

// Invalid argument for the mathematical domain of an operation
// (n = 0, crossing arches, non-ASM input, ...).
using DomainError = std::domain_error;

// A computed object violates a structural property the whole setup relies on:
// a kernel that is not one-dimensional, a non-positive Perron component,
// a closed form that should be integral but is not. The message carries the
// offending exact values.
class StructuralFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The request exceeds a configured size guard. Callers may raise the guard.
class GuardRefusal : public std::runtime_error {
public:
    GuardRefusal(const std::string& what, int limit)
        : std::runtime_error(what + " (configured limit: " + std::to_string(limit) + ")"),
          limit_(limit) {}

    int limit() const noexcept { return limit_; }

private:
    int limit_;
};

} // namespace fpl
