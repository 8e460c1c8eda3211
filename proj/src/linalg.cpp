#include "orienteer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orienteer {

CMat::CMat(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries)
    : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols)
        throw std::invalid_argument("CMat: entry count does not match dimensions");
}

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::adjoint() const {
    CMat out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMat CMat::transpose() const {
    CMat out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

CMat CMat::conj() const {
    CMat out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
    return out;
}

cplx CMat::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

CMat& CMat::operator+=(const CMat& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix add: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix sub: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMat& CMat::operator*=(cplx scalar) {
    for (auto& e : data_) e *= scalar;
    return *this;
}

double CMat::max_abs_diff(const CMat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const auto& e : data_) m = std::max(m, std::abs(e));
    return m;
}

double CMat::frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : data_) s += std::norm(e);
    return std::sqrt(s);
}

bool CMat::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
}

bool CMat::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    return matmul(adjoint(), *this).max_abs_diff(identity(rows_)) <= tol;
}

double CVec::norm() const {
    double s = 0.0;
    for (const auto& e : data_) s += std::norm(e);
    return std::sqrt(s);
}

bool CVec::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    CMat out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx arc = a(r, k);
            if (arc == cplx{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += arc * b(k, c);
        }
    return out;
}

CVec matvec(const CMat& m, const CVec& v) {
    if (m.cols() != v.dim()) throw std::invalid_argument("matvec: dimension mismatch");
    CVec out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        cplx s{0.0, 0.0};
        for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const cplx f = a(ar, ac);
            if (f == cplx{0.0, 0.0}) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
        }
    return out;
}

CVec kron(const CVec& a, const CVec& b) {
    CVec out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

cplx inner(const CVec& a, const CVec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

CMat projector(const CVec& v) {
    CMat out(v.dim(), v.dim());
    for (std::size_t r = 0; r < v.dim(); ++r)
        for (std::size_t c = 0; c < v.dim(); ++c) out(r, c) = v[r] * std::conj(v[c]);
    return out;
}

CMat partial_trace_walker(const CMat& op, std::size_t walker_dim) {
    const std::size_t d = 2 * walker_dim;
    if (op.rows() != d || op.cols() != d)
        throw std::invalid_argument("partial_trace_walker: operator must be (2*walker_dim)^2");
    CMat out(2, 2);
    for (std::size_t x = 0; x < walker_dim; ++x)
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) out(r, c) += op(x * 2 + r, x * 2 + c);
    return out;
}

CMat partial_trace_coin(const CMat& op, std::size_t walker_dim) {
    const std::size_t d = 2 * walker_dim;
    if (op.rows() != d || op.cols() != d)
        throw std::invalid_argument("partial_trace_coin: operator must be (2*walker_dim)^2");
    CMat out(walker_dim, walker_dim);
    for (std::size_t r = 0; r < walker_dim; ++r)
        for (std::size_t c = 0; c < walker_dim; ++c)
            for (std::size_t s = 0; s < 2; ++s) out(r, c) += op(r * 2 + s, c * 2 + s);
    return out;
}

// One annihilating rotation of the classical Jacobi scheme, extended to
// complex Hermitian matrices: the (p,q) plane rotation carries the phase
// of the off-diagonal entry.
EigResult eig_hermitian(const CMat& m, double hermiticity_tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian: matrix not square");
    const double scale = std::max(1.0, m.max_abs());
    if (!m.is_hermitian(hermiticity_tol * scale))
        throw std::invalid_argument("eig_hermitian: matrix not Hermitian within tolerance");

    const std::size_t n = m.rows();
    CMat a = m;
    // Symmetrize exactly so rounding in the input cannot drift the sweep.
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = cplx{a(r, r).real(), 0.0};
        for (std::size_t c = r + 1; c < n; ++c) {
            const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = avg;
            a(c, r) = std::conj(avg);
        }
    }
    CMat v = CMat::identity(n);

    const int max_sweeps = 128;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) off += 2.0 * std::norm(a(r, c));
        if (std::sqrt(off) <= 1e-14 * scale * static_cast<double>(n)) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r_pq = std::abs(a(p, q));
                if (r_pq <= 1e-300) continue;
                const cplx phase = a(p, q) / r_pq;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * r_pq, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const cplx su = s * phase;        // column p mixes in q
                const cplx suc = s * std::conj(phase);

                // A <- U^dag A U with U = [[c, -s*phase],[s*conj(phase), c]]
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + suc * akq;
                    a(k, q) = -su * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + su * aqk;
                    a(q, k) = -suc * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + suc * vkq;
                    v(k, q) = -su * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

} // namespace orienteer
