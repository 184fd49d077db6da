#pragma once

#include <stdexcept>
#include <string>

namespace omorse {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input, failed validation, violated preconditions. CLI exit code 1.
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

// The data handed to an algorithm does not have the required shape
// (e.g. a "matching" that reuses an element).
class StructuralError : public InputError {
public:
    using InputError::InputError;
};

// Configured size limits exceeded. CLI exit code 3.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

// A runtime check of a proven statement failed. Never expected on valid
// input; carries a machine-readable witness. CLI exit code 2.
class TheoremViolation : public Error {
public:
    TheoremViolation(std::string check, std::string witness)
        : Error(check + ": " + witness), check_(std::move(check)), witness_(std::move(witness)) {}

    const std::string& check() const noexcept { return check_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string check_;
    std::string witness_;
};

}  // namespace omorse
