#pragma once

#include <stdexcept>
#include <string>

namespace ostn {

// Raised for invalid scenario parameters or evaluator preconditions
// (e.g. M1 = 0 on an analytical path, pole collisions on a Mellin-Barnes
// contour, out-of-range config values).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a numerical procedure cannot meet its accuracy target.
// Carries the best estimate obtained and the achieved error bound so
// callers can decide whether a degraded value is still usable.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double estimate, double achieved_error)
        : std::runtime_error(what), estimate_(estimate), achieved_error_(achieved_error) {}

    double estimate() const noexcept { return estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double estimate_;
    double achieved_error_;
};

}  // namespace ostn
