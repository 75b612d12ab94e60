#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entwit/basis.hpp"
#include "entwit/eig.hpp"
#include "entwit/matrix.hpp"
#include "entwit/states.hpp"

namespace entwit {

// Which constant multiplies the quadratic term of a nonlinear witness:
// the Schmidt weight of psi (the provably safe choice) or the square of
// its largest computational-basis amplitude (reproduces the published
// figure-2 surface). Identical for the two-qubit phi- case.
enum class SConvention { Schmidt, PaperFigure };

inline std::string to_string(SConvention c) {
    return c == SConvention::Schmidt ? "schmidt" : "paper-figure";
}

// Linear map on d x d operators, stored as its real d^2 x d^2 matrix over
// the orthonormal Hermitian basis B_i / sqrt(tr B_i^2). A real matrix is
// automatically Hermiticity-preserving, and the Hilbert-Schmidt adjoint is
// its (conjugate) transpose, so no adjoint is ever derived by hand.
class PositiveMap {
  public:
    static PositiveMap identity(int d) {
        PositiveMap m(d);
        for (int i = 0; i < d * d; ++i) m.coef_[static_cast<size_t>(i) * d * d + i] = 1.0;
        return m;
    }

    // Builds the operator-space matrix by applying `action` to each basis
    // element. `action` must be linear and Hermiticity-preserving.
    static PositiveMap from_action(int d,
                                   const std::function<CMatrix(const CMatrix&)>& action) {
        const auto& basis = OperatorBasis::for_dim(d);
        PositiveMap m(d);
        for (int j = 0; j < d * d; ++j) {
            const double nj = std::sqrt(basis.square_traces[j]);
            const CMatrix out = action((1.0 / nj) * basis.elements[j]);
            for (int i = 0; i < d * d; ++i) {
                const double ni = std::sqrt(basis.square_traces[i]);
                const cplx c = expectation(basis.elements[i], out) / ni;
                if (std::abs(c.imag()) > 1e-10)
                    throw std::invalid_argument(
                        "PositiveMap::from_action: action is not Hermiticity-preserving");
                m.coef_[static_cast<size_t>(i) * d * d + j] = c.real();
            }
        }
        return m;
    }

    int dim() const { return dim_; }

    // Complex-linear extension of the map: decompose the operator over the
    // (orthonormal) Hermitian basis with complex coefficients, push the
    // coefficients through the real matrix, reassemble.
    CMatrix apply(const CMatrix& x) const {
        if (x.rows() != dim_ || x.cols() != dim_)
            throw DimensionError("PositiveMap::apply: operator does not match map dim");
        const auto& basis = OperatorBasis::for_dim(dim_);
        const int n = dim_ * dim_;
        std::vector<cplx> in(n), out(n, 0.0);
        for (int j = 0; j < n; ++j)
            in[j] = expectation(basis.elements[j], x) / std::sqrt(basis.square_traces[j]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out[i] += coef_[static_cast<size_t>(i) * n + j] * in[j];
        CMatrix y(dim_, dim_);
        for (int i = 0; i < n; ++i) {
            if (out[i] == 0.0) continue;
            y += (out[i] / std::sqrt(basis.square_traces[i])) * basis.elements[i];
        }
        return y;
    }

    PositiveMap adjoint() const {
        PositiveMap m(dim_);
        const int n = dim_ * dim_;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.coef_[static_cast<size_t>(i) * n + j] =
                    coef_[static_cast<size_t>(j) * n + i];
        return m;
    }

    const std::vector<double>& operator_matrix() const { return coef_; }

  private:
    explicit PositiveMap(int d) : dim_(d), coef_(static_cast<size_t>(d) * d * d * d) {
        OperatorBasis::for_dim(d); // validates d
    }

    int dim_;
    std::vector<double> coef_;
};

// The qutrit map
//   [a11 a12 a13]    [ a11+a33  -a12     -a13   ]
//   [a21 a22 a23] -> [-a21       a22+a11 -a23   ]
//   [a31 a32 a33]    [-a31      -a32      a33+a22]
// It is positive but not completely positive, and detects the rho_b family
// for a > 3. Maps the identity to twice the identity.
inline PositiveMap choi_map() {
    return PositiveMap::from_action(3, [](const CMatrix& x) {
        CMatrix y = cplx(-1.0) * x;
        y(0, 0) = x(0, 0) + x(2, 2);
        y(1, 1) = x(1, 1) + x(0, 0);
        y(2, 2) = x(2, 2) + x(1, 1);
        return y;
    });
}

inline PositiveMap map_adjoint(const PositiveMap& m) { return m.adjoint(); }

// (I (x) m) applied to an operator on C^{d1} (x) C^{d2}: the map acts on
// each d2 x d2 block.
inline CMatrix apply_extended(const PositiveMap& m, const CMatrix& op, Dims dims) {
    if (dims.b != m.dim() || op.rows() != dims.total() || op.cols() != dims.total())
        throw DimensionError("apply_extended: dims do not match map");
    CMatrix out(op.rows(), op.cols());
    CMatrix block(dims.b, dims.b);
    for (int i = 0; i < dims.a; ++i)
        for (int j = 0; j < dims.a; ++j) {
            for (int k = 0; k < dims.b; ++k)
                for (int l = 0; l < dims.b; ++l)
                    block(k, l) = op(i * dims.b + k, j * dims.b + l);
            const CMatrix mapped = m.apply(block);
            for (int k = 0; k < dims.b; ++k)
                for (int l = 0; l < dims.b; ++l)
                    out(i * dims.b + k, j * dims.b + l) = mapped(k, l);
        }
    return out;
}

inline CMatrix apply_extended(const PositiveMap& m, const DensityMatrix& rho) {
    return apply_extended(m, rho.matrix, rho.dims);
}

struct Provenance {
    enum class Kind { PptEigenvector, MapAdjoint };
    Kind kind = Kind::PptEigenvector;
    std::string label; // e.g. "ppt-eigenvector(phi+)"
};

struct LinearWitness {
    Dims dims;
    CMatrix matrix; // Hermitian
    Provenance provenance;

    double c00() const { return matrix.trace().real() / dims.total(); }
};

// W = |phi><phi|^{T_B}: nonnegative on separable states, negative on any
// state whose partial transpose has |phi> as eigenvector for a negative
// eigenvalue.
inline LinearWitness witness_from_ppt(const Ket& phi) {
    return LinearWitness{
        phi.dims,
        partial_transpose(phi.projector(), phi.dims, Subsystem::B),
        {Provenance::Kind::PptEigenvector, "ppt-eigenvector"}};
}

// W = (I (x) m)^+ |phi><phi| for a positive map m.
inline LinearWitness witness_from_map(const PositiveMap& m, const Ket& phi) {
    return LinearWitness{phi.dims,
                         apply_extended(m.adjoint(), phi.projector(), phi.dims),
                         {Provenance::Kind::MapAdjoint, "map-adjoint"}};
}

// Quadratic extension F(rho) = <W> - (1/s) (<H>^2 + <A>^2) built from
// X = |phi><psi| with X^{T_B} = H + iA.
struct NonlinearWitness {
    LinearWitness linear;
    CMatrix x; // |phi><psi|
    CMatrix h; // Hermitian part of x^{T_B}
    CMatrix a; // anti-Hermitian part of x^{T_B}, i.e. x^{T_B} = h + i a
    double s = 0.0;       // Schmidt weight of psi
    double s_basis = 0.0; // largest |amplitude|^2 of psi (paper-figure constant)
    double c0h = 0.0;     // tr(h) / (d1 d2)
    double c0a = 0.0;     // tr(a) / (d1 d2)

    double s_for(SConvention conv) const {
        return conv == SConvention::Schmidt ? s : s_basis;
    }
};

inline NonlinearWitness nonlinear_extend(const LinearWitness& w, const Ket& phi,
                                         const Ket& psi) {
    if (!(phi.dims == w.dims) || !(psi.dims == w.dims))
        throw DimensionError("nonlinear_extend: ket dims do not match witness");
    const int n = w.dims.total();
    CMatrix x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = phi.amps[i] * std::conj(psi.amps[j]);

    NonlinearWitness f;
    f.linear = w;
    f.x = x;
    auto [h, a] = hermitian_split(partial_transpose(x, w.dims, Subsystem::B));
    f.h = std::move(h);
    f.a = std::move(a);
    f.s = schmidt_weight(psi);
    f.s_basis = basis_weight(psi);
    if (f.s <= 0.0)
        throw std::domain_error("nonlinear_extend: Schmidt weight must be positive");
    f.c0h = f.h.trace().real() / n;
    f.c0a = f.a.trace().real() / n;
    return f;
}

inline double real_expectation(const CMatrix& op, const DensityMatrix& rho,
                               const Tolerances& tol = default_tolerances()) {
    const cplx t = expectation(op, rho.matrix);
    if (std::abs(t.imag()) > tol.structural)
        throw std::invalid_argument("real_expectation: value has imaginary part " +
                                    std::to_string(t.imag()));
    return t.real();
}

inline double eval_linear(const LinearWitness& w, const DensityMatrix& rho,
                          const Tolerances& tol = default_tolerances()) {
    if (!(w.dims == rho.dims)) throw DimensionError("eval_linear: dims mismatch");
    return real_expectation(w.matrix, rho, tol);
}

inline double eval_nonlinear(const NonlinearWitness& f, const DensityMatrix& rho,
                             const Tolerances& tol = default_tolerances()) {
    const double lin = eval_linear(f.linear, rho, tol);
    const double h = real_expectation(f.h, rho, tol);
    const double a = real_expectation(f.a, rho, tol);
    return lin - (h * h + a * a) / f.s;
}

} // namespace entwit
