#pragma once

#include <stdexcept>
#include <string>

namespace twistvol {

// Invalid argument values (knot index, angles out of range, band violations).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Vector or matrix of the wrong size.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Iterations that fail to converge, quadrature that fails to stabilise.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twistvol
