#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orienteer {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Everything in this project is tiny
// (2x2, 4x4, at most the truncated walker space), so the kernel favors
// clarity over speed and validates dimensions on every operation.
class CMat {
public:
    CMat() : rows_(0), cols_(0) {}
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}
    CMat(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries);

    static CMat identity(std::size_t n);
    static CMat zero(std::size_t n) { return CMat(n, n); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    CMat adjoint() const;
    CMat transpose() const;
    CMat conj() const;
    cplx trace() const;

    CMat& operator+=(const CMat& other);
    CMat& operator-=(const CMat& other);
    CMat& operator*=(cplx scalar);

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }

    // Largest absolute entry of (*this - other); the workhorse comparison
    // for all the 1e-10 style tolerances in this project.
    double max_abs_diff(const CMat& other) const;
    double max_abs() const;
    double frobenius_norm() const;

    bool is_hermitian(double tol = 1e-10) const;
    bool is_unitary(double tol = 1e-10) const;

    const std::vector<cplx>& data() const { return data_; }

private:
    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

// Complex column vector.
class CVec {
public:
    CVec() = default;
    explicit CVec(std::size_t dim) : data_(dim, cplx{0.0, 0.0}) {}
    CVec(std::initializer_list<cplx> entries) : data_(entries) {}

    std::size_t dim() const { return data_.size(); }
    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }

    double norm() const;
    bool is_normalized(double tol = 1e-12) const;

    const std::vector<cplx>& data() const { return data_; }

private:
    std::vector<cplx> data_;
};

CMat matmul(const CMat& a, const CMat& b);
CVec matvec(const CMat& m, const CVec& v);
CMat kron(const CMat& a, const CMat& b);
CVec kron(const CVec& a, const CVec& b);

// <a|b>, conjugate-linear in the first argument.
cplx inner(const CVec& a, const CVec& b);

// |v><v|
CMat projector(const CVec& v);

// Trace over the walker (first, slow) index of an operator on
// walker (x) coin, leaving the 2x2 coin part.
CMat partial_trace_walker(const CMat& op, std::size_t walker_dim);

// Trace over the coin (second, fast) index, leaving the walker part.
CMat partial_trace_coin(const CMat& op, std::size_t walker_dim);

struct EigResult {
    std::vector<double> eigenvalues; // ascending
    CMat eigenvectors;               // columns, orthonormal
};

// Cyclic Jacobi sweep for Hermitian matrices. Throws if the input is not
// Hermitian within `hermiticity_tol`.
EigResult eig_hermitian(const CMat& m, double hermiticity_tol = 1e-10);

// f applied to the eigenvalues of a Hermitian matrix: V f(L) V^dag.
template <typename F>
CMat hermitian_function(const CMat& m, F&& f, double hermiticity_tol = 1e-10) {
    EigResult eig = eig_hermitian(m, hermiticity_tol);
    const std::size_t n = m.rows();
    CMat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fv = f(eig.eigenvalues[k]);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                out(r, c) += fv * eig.eigenvectors(r, k) * std::conj(eig.eigenvectors(c, k));
    }
    return out;
}

} // namespace orienteer
