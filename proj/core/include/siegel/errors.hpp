#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

// Bad input: violated precondition, malformed matrix, wrong parity and so on.
using domain_error = std::invalid_argument;

// Input is well formed but lies outside what the library computes
// (p = 2 stabilization, wild characters, enumeration caps).
class scope_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class bound_error : public scope_error {
public:
    using scope_error::scope_error;
};

// An internal identity failed. Always a bug signal, never user error.
class consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace siegel
