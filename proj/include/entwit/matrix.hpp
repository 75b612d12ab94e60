#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "entwit/errors.hpp"

namespace entwit {

using cplx = std::complex<double>;

// Dimensions of a bipartite system: factor A has dim a, factor B has dim b.
struct Dims {
    int a = 0;
    int b = 0;
    int total() const { return a * b; }
    bool operator==(const Dims&) const = default;
};

enum class Subsystem { A, B };

// Dense row-major complex matrix. Everything in this toolkit is at most
// 9x9, so no attempt is made at being clever about storage or blocking.
class CMatrix {
  public:
    CMatrix() = default;

    CMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
        if (rows < 1 || cols < 1)
            throw DimensionError("CMatrix: dimensions must be >= 1");
    }

    CMatrix(int rows, int cols, std::initializer_list<cplx> entries)
        : CMatrix(rows, cols) {
        if (static_cast<int>(entries.size()) != rows * cols)
            throw DimensionError("CMatrix: entry count does not match shape");
        std::copy(entries.begin(), entries.end(), data_.begin());
    }

    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<size_t>(i) * cols_ + j];
    }
    const cplx& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<size_t>(i) * cols_ + j];
    }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    CMatrix& operator+=(const CMatrix& o) {
        require_same_shape(o, "operator+=");
        for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        require_same_shape(o, "operator-=");
        for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    CMatrix& operator*=(cplx s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cplx s, CMatrix m) { return m *= s; }
    friend CMatrix operator*(CMatrix m, cplx s) { return m *= s; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionError("CMatrix multiply: inner dimensions differ");
        CMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    CMatrix transpose() const {
        CMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    CMatrix conjugate() const {
        CMatrix c = *this;
        for (auto& v : c.data_) v = std::conj(v);
        return c;
    }

    // Conjugate transpose.
    CMatrix dagger() const { return transpose().conjugate(); }

    cplx trace() const {
        require_square("trace");
        cplx t = 0.0;
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (const auto& v : data_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    // ||m - m^dagger||_F
    double hermiticity_defect() const {
        require_square("hermiticity_defect");
        double s = 0.0;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
        return std::sqrt(s);
    }

    bool is_hermitian(double tol) const {
        return is_square() && hermiticity_defect() <= tol;
    }

    void require_square(const char* who) const {
        if (!is_square()) throw DimensionError(std::string(who) + ": matrix not square");
    }

    void require_hermitian(const char* who, double tol) const {
        require_square(who);
        const double defect = hermiticity_defect();
        if (defect > tol)
            throw HermiticityError(std::string(who) + ": input not Hermitian", defect);
    }

  private:
    void require_same_shape(const CMatrix& o, const char* who) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError(std::string(who) + ": shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == 0.0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

// Transposition of one tensor factor of an operator on C^{d1} (x) C^{d2}.
// Row index (i,k) and column index (j,l) with i,j over factor A and
// k,l over factor B; transposing B swaps k <-> l.
inline CMatrix partial_transpose(const CMatrix& m, Dims dims, Subsystem which) {
    const int n = dims.total();
    if (dims.a < 1 || dims.b < 1 || m.rows() != n || m.cols() != n)
        throw DimensionError("partial_transpose: matrix does not match dims");
    CMatrix out(n, n);
    for (int i = 0; i < dims.a; ++i)
        for (int k = 0; k < dims.b; ++k)
            for (int j = 0; j < dims.a; ++j)
                for (int l = 0; l < dims.b; ++l) {
                    const cplx v = m(i * dims.b + k, j * dims.b + l);
                    if (which == Subsystem::B)
                        out(i * dims.b + l, j * dims.b + k) = v;
                    else
                        out(j * dims.b + k, i * dims.b + l) = v;
                }
    return out;
}

// x = h + i*a with h, a Hermitian; exact by construction.
inline std::pair<CMatrix, CMatrix> hermitian_split(const CMatrix& x) {
    x.require_square("hermitian_split");
    const CMatrix xd = x.dagger();
    CMatrix h(x.rows(), x.cols());
    CMatrix a(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            h(i, j) = 0.5 * (x(i, j) + xd(i, j));
            a(i, j) = cplx(0.0, -0.5) * (x(i, j) - xd(i, j));
        }
    return {h, a};
}

// tr(op * rho)
inline cplx expectation(const CMatrix& op, const CMatrix& rho) {
    if (op.cols() != rho.rows() || op.rows() != rho.cols())
        throw DimensionError("expectation: shape mismatch");
    cplx t = 0.0;
    for (int i = 0; i < op.rows(); ++i)
        for (int k = 0; k < op.cols(); ++k) t += op(i, k) * rho(k, i);
    return t;
}

} // namespace entwit
