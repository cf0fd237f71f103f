#pragma once

#include <stdexcept>
#include <string>

namespace pwa {

/// A numerically certified property failed (closure gap, root certificate, ...).
struct CertificationError : std::runtime_error {
    double residual;
    explicit CertificationError(const std::string& what, double residual_ = 0.0)
        : std::runtime_error(what), residual(residual_) {}
};

/// Query on a derivative-discontinuity line where the answer is undefined.
struct BreakLineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A geometric construction (intersection, polygon build) did not succeed.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative search exhausted its budget.
struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pwa
