#pragma once

namespace entwit {

// Single knob for the numerical tolerances used across the library.
// `structural` guards Hermiticity / trace / positivity / eigen-residual
// checks; `reconstruction` guards basis roundtrips and unit norms.
struct Tolerances {
    double structural = 1e-10;
    double reconstruction = 1e-12;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

} // namespace entwit
