#pragma once

#include <stdexcept>
#include <string>

namespace drude {

/// Violated precondition or incompatible arguments (mesh/stagger mismatch,
/// malformed operator chains, missing initial data).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Mathematical domain error (zero frequency, negative radicand, zero reference).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Bad or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite field values produced while stepping.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(long step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

/// Failure writing results.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace drude
