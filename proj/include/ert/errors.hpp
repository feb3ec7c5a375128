#pragma once

#include <stdexcept>

namespace ert {

/// An argument lies outside the domain of a map or transform.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input data violates a structural requirement (phantom layout, parameters).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File could not be opened, read, or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ert
