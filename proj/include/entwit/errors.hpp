#pragma once

#include <stdexcept>
#include <string>

namespace entwit {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an operation requires a Hermitian input; carries the
// Frobenius norm of m - m^dagger.
struct HermiticityError : std::invalid_argument {
    HermiticityError(const std::string& what, double defect_norm)
        : std::invalid_argument(what + " (hermiticity defect " +
                                std::to_string(defect_norm) + ")"),
          defect(defect_norm) {}
    double defect;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace entwit
