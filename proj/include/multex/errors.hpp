#pragma once

#include <stdexcept>
#include <string>

namespace multex {

/// Malformed data: out-of-range vertex, bad edge-list line, wrong weight count.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters outside an operation's stated regime (e.g. d > a-1, a < 3).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// n < s: no s-set exists, so multiplicities are unconstrained.
class UnboundedProblem : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace multex
