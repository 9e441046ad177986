#pragma once

#include <stdexcept>
#include <string>

namespace moledrill {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or dataset text. Carries the offending line when known (0 otherwise).
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string field = {}, int line = 0)
        : Error(what), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

/// A record field outside its admissible range.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& bound)
        : Error(field + ": " + bound), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested torque exceeds what the motor delivers through the transmission.
class StallError : public Error {
public:
    using Error::Error;
};

/// Zero or negative penetration rate where a division by it is required.
class InfeasibleRateError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

/// Digging-sequence interlock violation.
class SequenceError : public Error {
public:
    SequenceError(std::string guard, const std::string& what)
        : Error(what), guard_(std::move(guard)) {}

    const std::string& guard() const noexcept { return guard_; }

private:
    std::string guard_;
};

}  // namespace moledrill
