#pragma once

#include <stdexcept>
#include <string>

namespace vofde {

// Raised when an adaptive numerical routine cannot reach its requested
// accuracy. Carries the best value computed so far and the error estimate
// that was actually achieved.
class NumericalAccuracyError : public std::runtime_error {
public:
    NumericalAccuracyError(const std::string& what, double best_estimate,
                           double achieved_error)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          achieved_error_(achieved_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double best_estimate_;
    double achieved_error_;
};

// Raised when a request exceeds a configured memory/size budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by triangular solvers on a zero diagonal entry.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vofde
