#pragma once

#include <stdexcept>
#include <string>

namespace itolab {

/// Domain descriptor admits no interior lattice node.
class EmptyInterior : public std::runtime_error {
public:
    explicit EmptyInterior(const std::string& what) : std::runtime_error(what) {}
};

/// Two grid functions that must live on the same grid do not.
class GridMismatch : public std::runtime_error {
public:
    explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// A difference of order |alpha| beyond the active Sobolev order was requested.
class OrderTooHigh : public std::runtime_error {
public:
    explicit OrderTooHigh(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solver hit its iteration cap before reaching tolerance.
class SolverDivergence : public std::runtime_error {
public:
    explicit SolverDivergence(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An experiment precondition (parabolicity, dissipativity, sign conditions)
/// failed and no override was requested.
class AssumptionViolated : public std::runtime_error {
public:
    explicit AssumptionViolated(const std::string& what) : std::runtime_error(what) {}
};

} // namespace itolab
