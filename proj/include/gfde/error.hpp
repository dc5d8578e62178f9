#pragma once

#include <stdexcept>
#include <string>

namespace gfde {

// Rejected input: bad parameters, inadmissible scale/weight pair, index out
// of range.  Raised before any marching work starts.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A computation ran but could not produce a trustworthy result
// (non-convergent quadrature, non-finite solution values, lost pivot).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gfde
