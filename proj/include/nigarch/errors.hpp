#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nigarch {

// A conditional variance left the finite double range.
class ExplosionError : public std::overflow_error {
public:
    ExplosionError(const std::string& what, std::size_t index)
        : std::overflow_error(what), index_(index) {}

    // First offending time index (or replication index when rethrown by the
    // Monte Carlo engine, see MonteCarloError).
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Configuration flagged as overflow-prone before any simulation runs.
class OverflowRiskError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Theorem statistic requested for a parameter set with the wrong sign of gamma.
class SignMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// beta = 1 + gamma - alpha < 0 for the requested scheme and n.
class InfeasibleSchemeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Delimited-text input that does not parse. line() is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nigarch
