#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace locell {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual input: cycle notation, presentations, registry files,
// functor expressions, symbolic terms.
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally valid input that violates a mathematical precondition
// (degree mismatch, non-normal subgroup, prime expected, unknown label).
class DomainError : public Error {
public:
    using Error::Error;
};

// A configured resource limit was hit.  Computations never truncate
// silently; they either finish exactly or raise this.
class CapError : public Error {
public:
    CapError(const std::string& what, std::string cap, long long limit)
        : Error(what), cap_(std::move(cap)), limit_(limit) {}

    const std::string& cap_name() const noexcept { return cap_; }
    long long limit() const noexcept { return limit_; }

private:
    std::string cap_;
    long long limit_;
};

// A declared expectation failed while loading data (registry order/center
// checks, cover validation) or an internal cross-check tripped.
class ValidationError : public Error {
public:
    using Error::Error;
};

// The symbolic rewriting system has no rule for the requested
// functor/term combination.
class NoRuleError : public Error {
public:
    using Error::Error;
};

} // namespace locell
