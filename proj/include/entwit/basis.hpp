#pragma once

#include <cmath>
#include <vector>

#include "entwit/matrix.hpp"
#include "entwit/tolerances.hpp"

namespace entwit {

// Orthogonal Hermitian operator basis for one subsystem: element 0 is the
// identity, elements 1..d^2-1 are traceless, and tr(B_i B_j) = 0 for i != j.
// Conventional normalization: tr(sigma_i^2) = 2 for the Paulis and
// tr(lambda_i^2) = 2 for the Gell-Mann matrices (tr(lambda_0^2) = 3).
struct OperatorBasis {
    int dim = 0;
    std::vector<CMatrix> elements;
    std::vector<double> square_traces; // tr(B_i^2), cached

    static const OperatorBasis& pauli();
    static const OperatorBasis& gell_mann();
    static const OperatorBasis& for_dim(int d);
};

namespace detail {

inline OperatorBasis make_pauli_basis() {
    const cplx i(0.0, 1.0);
    OperatorBasis b;
    b.dim = 2;
    b.elements = {
        CMatrix::identity(2),
        CMatrix(2, 2, {0, 1, 1, 0}),
        CMatrix(2, 2, {0, -i, i, 0}),
        CMatrix(2, 2, {1, 0, 0, -1}),
    };
    b.square_traces = {2, 2, 2, 2};
    return b;
}

inline OperatorBasis make_gell_mann_basis() {
    const cplx i(0.0, 1.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    OperatorBasis b;
    b.dim = 3;
    b.elements = {
        CMatrix::identity(3),
        CMatrix(3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 0}),
        CMatrix(3, 3, {0, -i, 0, i, 0, 0, 0, 0, 0}),
        CMatrix(3, 3, {1, 0, 0, 0, -1, 0, 0, 0, 0}),
        CMatrix(3, 3, {0, 0, 1, 0, 0, 0, 1, 0, 0}),
        CMatrix(3, 3, {0, 0, -i, 0, 0, 0, i, 0, 0}),
        CMatrix(3, 3, {0, 0, 0, 0, 0, 1, 0, 1, 0}),
        CMatrix(3, 3, {0, 0, 0, 0, 0, -i, 0, i, 0}),
        CMatrix(3, 3, {r3, 0, 0, 0, r3, 0, 0, 0, -2 * r3}),
    };
    b.square_traces = {3, 2, 2, 2, 2, 2, 2, 2, 2};
    return b;
}

} // namespace detail

inline const OperatorBasis& OperatorBasis::pauli() {
    static const OperatorBasis b = detail::make_pauli_basis();
    return b;
}

inline const OperatorBasis& OperatorBasis::gell_mann() {
    static const OperatorBasis b = detail::make_gell_mann_basis();
    return b;
}

inline const OperatorBasis& OperatorBasis::for_dim(int d) {
    if (d == 2) return pauli();
    if (d == 3) return gell_mann();
    throw DimensionError("OperatorBasis: only subsystem dimensions 2 and 3 are supported");
}

// Real coefficient table C_ij of a Hermitian bipartite operator over the
// product basis B_i (x) B_j, so that m = sum_ij C_ij B_i (x) B_j.
struct Decomposition {
    Dims dims;
    std::vector<double> coeffs; // row-major, a.dim^2 x b.dim^2

    double c(int i, int j) const {
        return coeffs[static_cast<size_t>(i) * dims.b * dims.b + j];
    }
    double c00() const { return coeffs[0]; }

    CMatrix reconstruct() const {
        const auto& ba = OperatorBasis::for_dim(dims.a);
        const auto& bb = OperatorBasis::for_dim(dims.b);
        CMatrix m(dims.total(), dims.total());
        for (int i = 0; i < dims.a * dims.a; ++i)
            for (int j = 0; j < dims.b * dims.b; ++j) {
                const double cij = c(i, j);
                if (cij == 0.0) continue;
                m += cij * kron(ba.elements[i], bb.elements[j]);
            }
        return m;
    }
};

// C_ij = tr[m (B_i (x) B_j)] / (tr(B_i^2) tr(B_j^2)); in particular
// C_00 = tr(m) / (d1 d2).
inline Decomposition decompose(const CMatrix& m, Dims dims,
                               const Tolerances& tol = default_tolerances()) {
    if (m.rows() != dims.total() || m.cols() != dims.total())
        throw DimensionError("decompose: matrix does not match dims");
    m.require_hermitian("decompose", tol.structural);
    const auto& ba = OperatorBasis::for_dim(dims.a);
    const auto& bb = OperatorBasis::for_dim(dims.b);

    Decomposition dec;
    dec.dims = dims;
    dec.coeffs.resize(static_cast<size_t>(dims.a) * dims.a * dims.b * dims.b);
    for (int i = 0; i < dims.a * dims.a; ++i)
        for (int j = 0; j < dims.b * dims.b; ++j) {
            const cplx t = expectation(kron(ba.elements[i], bb.elements[j]), m);
            dec.coeffs[static_cast<size_t>(i) * dims.b * dims.b + j] =
                t.real() / (ba.square_traces[i] * bb.square_traces[j]);
        }
    return dec;
}

} // namespace entwit
