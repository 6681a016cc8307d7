#pragma once

#include <stdexcept>
#include <string>

namespace qbasim {

/// Raised when an argument lies outside an operation's mathematical domain
/// (zero divisor, non-monic modulus, probability outside [0, 1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a protocol rule is broken: key reuse, mismatched key roles,
/// exhausted key material.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qbasim
