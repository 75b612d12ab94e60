#pragma once

#include <cmath>

#include "entwit/entwit.hpp"

namespace testing_helpers {

using namespace entwit;

inline CMatrix random_matrix(int rows, int cols, Rng& rng) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cplx(rng.gaussian(), rng.gaussian());
    return m;
}

inline CMatrix random_hermitian(int n, Rng& rng) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = rng.gaussian();
        for (int j = i + 1; j < n; ++j) {
            const cplx v(rng.gaussian(), rng.gaussian());
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

// Full-rank random state: G G^dagger / tr(G G^dagger) with Ginibre G.
inline DensityMatrix random_density(Dims dims, Rng& rng) {
    const int n = dims.total();
    const CMatrix g = random_matrix(n, n, rng);
    CMatrix m = g * g.dagger();
    m *= cplx(1.0 / m.trace().real());
    return DensityMatrix{dims, std::move(m)};
}

// Haar-ish unitary via Gram-Schmidt on a Ginibre matrix.
inline CMatrix random_unitary(int n, Rng& rng) {
    CMatrix g = random_matrix(n, n, rng);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx dot = 0.0;
            for (int i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
            for (int i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(g(i, j));
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) g(i, j) /= norm;
    }
    return g;
}

inline Ket qutrit_phi() {
    const cplx r(1.0 / std::sqrt(3.0));
    return Ket::create({3, 3}, {r, 0, 0, 0, r, 0, 0, 0, r});
}

inline Ket qutrit_psi() {
    return Ket::create({3, 3}, {0, 0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0});
}

inline LinearWitness bound_witness() { return witness_from_map(choi_map(), qutrit_phi()); }

} // namespace testing_helpers
