#pragma once

#include <stdexcept>
#include <string>

namespace locsol {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input for which the requested quantity is undefined (zero valuation argument,
/// all-zero coefficient vector, zero entry where units are required).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// A computation would exceed its configured size cap. `required` is the size
/// that would have been needed.
class ResourceBound : public Error {
public:
    ResourceBound(const std::string& what, double required)
        : Error(what), required_(required) {}
    double required() const noexcept { return required_; }

private:
    double required_;
};

class UnsupportedPair : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class DivergentTail : public Error {
public:
    using Error::Error;
};

class ClassificationMismatch : public Error {
public:
    using Error::Error;
};

class CacheCorrupted : public Error {
public:
    using Error::Error;
};

}  // namespace locsol
