#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "entwit/eig.hpp"
#include "entwit/matrix.hpp"
#include "entwit/rng.hpp"
#include "entwit/tolerances.hpp"

namespace entwit {

// Pure bipartite state: amplitudes in the computational product basis,
// index (i,j) stored at i*dims.b + j.
struct Ket {
    Dims dims;
    std::vector<cplx> amps;

    static Ket create(Dims dims, std::vector<cplx> amps,
                      const Tolerances& tol = default_tolerances()) {
        if (dims.a < 1 || dims.b < 1 ||
            static_cast<int>(amps.size()) != dims.total())
            throw DimensionError("Ket: amplitude count does not match dims");
        double n2 = 0.0;
        for (const auto& c : amps) n2 += std::norm(c);
        if (std::abs(n2 - 1.0) > tol.reconstruction)
            throw std::invalid_argument("Ket: amplitudes not unit-norm (|norm^2-1| = " +
                                        std::to_string(std::abs(n2 - 1.0)) + ")");
        return Ket{dims, std::move(amps)};
    }

    cplx amp(int i, int j) const { return amps[static_cast<size_t>(i) * dims.b + j]; }

    // |k><k|
    CMatrix projector() const {
        const int n = dims.total();
        CMatrix p(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p(i, j) = amps[i] * std::conj(amps[j]);
        return p;
    }

    // d1 x d2 matrix of amplitudes; its singular values are the Schmidt
    // coefficients.
    CMatrix coefficient_matrix() const {
        CMatrix m(dims.a, dims.b);
        for (int i = 0; i < dims.a; ++i)
            for (int j = 0; j < dims.b; ++j) m(i, j) = amp(i, j);
        return m;
    }
};

inline cplx inner(const Ket& x, const Ket& y) {
    if (!(x.dims == y.dims)) throw DimensionError("inner: dims mismatch");
    cplx s = 0.0;
    for (size_t k = 0; k < x.amps.size(); ++k) s += std::conj(x.amps[k]) * y.amps[k];
    return s;
}

struct DensityMatrix {
    Dims dims;
    CMatrix matrix;

    // Validates Hermiticity, unit trace and positivity before admitting the
    // matrix as a state.
    static DensityMatrix create(Dims dims, CMatrix m,
                                const Tolerances& tol = default_tolerances()) {
        if (m.rows() != dims.total() || m.cols() != dims.total())
            throw DimensionError("DensityMatrix: matrix does not match dims");
        if (!m.all_finite())
            throw std::invalid_argument("DensityMatrix: non-finite entries");
        m.require_hermitian("DensityMatrix", tol.structural);
        const double tr = m.trace().real();
        if (std::abs(tr - 1.0) > tol.structural)
            throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) +
                                        " != 1");
        const double mineig = min_eigenvalue(m, tol);
        if (mineig < -tol.structural)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                        std::to_string(mineig));
        return DensityMatrix{dims, std::move(m)};
    }
};

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline Ket bell(BellState which) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (which) {
        case BellState::PhiPlus:  return Ket::create({2, 2}, {r, 0, 0, r});
        case BellState::PhiMinus: return Ket::create({2, 2}, {r, 0, 0, -r});
        case BellState::PsiPlus:  return Ket::create({2, 2}, {0, r, r, 0});
        case BellState::PsiMinus: return Ket::create({2, 2}, {0, r, -r, 0});
    }
    throw std::invalid_argument("bell: unknown state");
}

// p |psi-><psi-| + (1-p) I/4
inline DensityMatrix werner(double p, const Tolerances& tol = default_tolerances()) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("werner: p must lie in [0, 1]");
    CMatrix m = p * bell(BellState::PsiMinus).projector();
    for (int i = 0; i < 4; ++i) m(i, i) += (1.0 - p) * 0.25;
    return DensityMatrix::create({2, 2}, std::move(m), tol);
}

// Two-qutrit one-parameter family
//   (2/7) |psi~><psi~| + (a/7) sigma+ + ((5-a)/7) sigma-
// with psi~ = (|00>+|11>+|22>)/sqrt(3),
//      sigma+ = (|01><01|+|12><12|+|20><20|)/3,
//      sigma- = (|10><10|+|21><21|+|02><02|)/3.
// PPT for 1 <= a <= 4 and entangled-but-PPT for 3 < a <= 4.
inline DensityMatrix rho_b(double a, const Tolerances& tol = default_tolerances()) {
    if (!(a >= 0.0 && a <= 5.0))
        throw std::domain_error("rho_b: a must lie in [0, 5]");
    CMatrix m(9, 9);
    const double w = 2.0 / 7.0 / 3.0; // (2/7) * (1/3) amplitudes of psi~
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i * 3 + i, j * 3 + j) += w;
    const int plus[3] = {0 * 3 + 1, 1 * 3 + 2, 2 * 3 + 0};
    const int minus[3] = {1 * 3 + 0, 2 * 3 + 1, 0 * 3 + 2};
    for (int k = 0; k < 3; ++k) {
        m(plus[k], plus[k]) += a / 21.0;
        m(minus[k], minus[k]) += (5.0 - a) / 21.0;
    }
    return DensityMatrix::create({3, 3}, std::move(m), tol);
}

inline double ppt_min_eigenvalue(const DensityMatrix& rho,
                                 const Tolerances& tol = default_tolerances()) {
    return min_eigenvalue(partial_transpose(rho.matrix, rho.dims, Subsystem::B), tol);
}

// Square of the largest Schmidt coefficient, in [1/min(d1,d2), 1].
inline double schmidt_weight(const Ket& psi) {
    const auto sv = singular_values(psi.coefficient_matrix());
    return sv.front() * sv.front();
}

// Square of the largest computational-basis amplitude. Used by the
// paper-figure constant convention; see SConvention in witness.hpp.
inline double basis_weight(const Ket& psi) {
    double best = 0.0;
    for (const auto& c : psi.amps) best = std::max(best, std::norm(c));
    return best;
}

inline Ket random_local_ket(int d, Rng& rng) {
    std::vector<cplx> v(d);
    double n2 = 0.0;
    for (auto& c : v) {
        c = cplx(rng.gaussian(), rng.gaussian());
        n2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : v) c *= inv;
    return Ket{{d, 1}, std::move(v)};
}

inline Ket random_product_ket(Dims dims, Rng& rng) {
    const Ket a = random_local_ket(dims.a, rng);
    const Ket b = random_local_ket(dims.b, rng);
    std::vector<cplx> v(dims.total());
    for (int i = 0; i < dims.a; ++i)
        for (int j = 0; j < dims.b; ++j)
            v[static_cast<size_t>(i) * dims.b + j] = a.amps[i] * b.amps[j];
    return Ket{dims, std::move(v)};
}

// |a><a| (x) |b><b| with Haar-uniform local kets; deterministic given the
// generator state.
inline DensityMatrix random_product_state(Dims dims, Rng& rng) {
    return DensityMatrix{dims, random_product_ket(dims, rng).projector()};
}

inline DensityMatrix random_product_state(Dims dims, std::uint64_t seed) {
    Rng rng(seed);
    return random_product_state(dims, rng);
}

} // namespace entwit
