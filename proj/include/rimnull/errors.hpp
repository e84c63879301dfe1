// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rimnull {

/// Input outside the mathematical domain of an operation (bad geometry, angles past the pole).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A dyad table has no entry for the requested (state, frequency, incidence) key.
class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller broke a documented precondition (non-transverse field, size mismatch).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rimnull
