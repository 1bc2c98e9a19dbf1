#pragma once

#include <stdexcept>
#include <string>

namespace globenv {

/// Precondition or input-format violation.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The data carry no usable spread (e.g. all curves identical).
class DegenerateData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured resource budget would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace globenv
