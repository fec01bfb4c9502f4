#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lms {

/// Base of every error thrown by the library. Check failures are never
/// thrown; they are returned as ConditionReports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: signature mismatch, out-of-range order, bad step...
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A curve family parameter set makes a radicand negative or a denominator vanish.
class ConstraintViolation : public Error {
public:
    ConstraintViolation(std::string constraint, double value)
        : Error("constraint violated: " + constraint + " = " + std::to_string(value)),
          constraint_(std::move(constraint)),
          value_(value) {}

    const std::string& constraint() const noexcept { return constraint_; }
    double value() const noexcept { return value_; }

private:
    std::string constraint_;
    double value_;
};

/// A surface constructor was handed curves violating the family's premises.
class PremiseFailure : public Error {
public:
    PremiseFailure(const std::string& what, std::vector<std::string> failed)
        : Error(what), failed_(std::move(failed)) {}

    const std::vector<std::string>& failed() const noexcept { return failed_; }

private:
    std::vector<std::string> failed_;
};

/// Induced metric is not of the form -E^2 (dx dy + dy dx) with E > 0.
class DegenerateMetric : public Error {
public:
    using Error::Error;
};

class SingularGram : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lms
