#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "entwit/matrix.hpp"
#include "entwit/tolerances.hpp"

namespace entwit {

struct EigResult {
    std::vector<double> values; // ascending
    CMatrix vectors;            // orthonormal columns, vectors.col(k) <-> values[k]
};

namespace detail {

inline double off_diagonal_norm(const CMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). The unitary acts on the
// (p,q) plane as [[c, -s e^{i theta}], [s e^{-i theta}, c]] where
// e^{i theta} is the phase of a(p,q); phasing the pivot real reduces the
// 2x2 block to the textbook real-symmetric rotation.
inline void jacobi_rotate(CMatrix& a, CMatrix& v, int p, int q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx phase = apq / mag; // e^{i theta}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (app - aqq) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = a.rows();
    const cplx se_m = s * std::conj(phase); // s e^{-i theta}
    const cplx se_p = s * phase;            // s e^{+i theta}

    // rows p and q of U^dagger A
    for (int r = 0; r < n; ++r) {
        const cplx apr = a(p, r);
        const cplx aqr = a(q, r);
        a(p, r) = c * apr + se_p * aqr;
        a(q, r) = -se_m * apr + c * aqr;
    }
    // columns p and q of (U^dagger A) U
    for (int r = 0; r < n; ++r) {
        const cplx arp = a(r, p);
        const cplx arq = a(r, q);
        a(r, p) = c * arp + se_m * arq;
        a(r, q) = -se_p * arp + c * arq;
    }
    // keep the diagonal exactly real and the pivot exactly zero
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (int r = 0; r < n; ++r) {
        const cplx vrp = v(r, p);
        const cplx vrq = v(r, q);
        v(r, p) = c * vrp + se_m * vrq;
        v(r, q) = -se_p * vrp + c * vrq;
    }
}

// Deterministic sign/phase convention: scale each column so its
// largest-magnitude component is real and positive.
inline void fix_column_phases(CMatrix& v) {
    for (int j = 0; j < v.cols(); ++j) {
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < v.rows(); ++i) {
            const double m = std::abs(v(i, j));
            if (m > best + 1e-14) {
                best = m;
                imax = i;
            }
        }
        if (best <= 0.0) continue;
        const cplx ph = v(imax, j) / best;
        for (int i = 0; i < v.rows(); ++i) v(i, j) /= ph;
        v(imax, j) = v(imax, j).real();
    }
}

} // namespace detail

// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
// Converges when the off-diagonal Frobenius norm drops below 1e-14,
// which a handful of sweeps reaches for the <= 9x9 matrices used here.
inline EigResult hermitian_eig(const CMatrix& m,
                               const Tolerances& tol = default_tolerances()) {
    m.require_hermitian("hermitian_eig", tol.structural);
    const int n = m.rows();

    CMatrix a = m;
    // symmetrize away the sub-tolerance defect so rotations see an exactly
    // Hermitian matrix
    for (int i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    CMatrix v = CMatrix::identity(n);

    constexpr double kOffTarget = 1e-14;
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (detail::off_diagonal_norm(a) > kOffTarget && sweep < kMaxSweeps) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
        ++sweep;
    }
    if (detail::off_diagonal_norm(a) > 1e-12 * std::max(1.0, m.frobenius_norm()))
        throw ConvergenceError("hermitian_eig: Jacobi sweep did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigResult res;
    res.values.resize(n);
    res.vectors = CMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
    }
    detail::fix_column_phases(res.vectors);
    return res;
}

inline double min_eigenvalue(const CMatrix& m,
                             const Tolerances& tol = default_tolerances()) {
    return hermitian_eig(m, tol).values.front();
}

// Singular values, descending: square roots of the eigenvalues of m m^dagger.
inline std::vector<double> singular_values(const CMatrix& m) {
    const CMatrix g = m * m.dagger(); // Hermitian PSD by construction
    EigResult eig = hermitian_eig(g);
    std::vector<double> sv(eig.values.size());
    for (size_t k = 0; k < sv.size(); ++k) {
        const double lam = eig.values[eig.values.size() - 1 - k];
        sv[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    return sv;
}

} // namespace entwit
