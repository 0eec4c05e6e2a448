#pragma once

#include <stdexcept>
#include <string>

namespace gblab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bidegree, dimension or size mismatch.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Point or parameter outside the admissible domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Metric sample not symmetric positive-definite.
class MetricError : public Error {
public:
    using Error::Error;
};

class RegistryError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Quadrature node failure or too few samples.
class IntegrationError : public Error {
public:
    using Error::Error;
};

}  // namespace gblab
