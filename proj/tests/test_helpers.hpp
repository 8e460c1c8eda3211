#pragma once

#include <doctest.h>

#include "orienteer/linalg.hpp"
#include "orienteer/rng.hpp"
#include "orienteer/states.hpp"

namespace orienteer::test {

inline void check_close(const CMat& got, const CMat& want, double tol = 1e-12) {
    REQUIRE(got.rows() == want.rows());
    REQUIRE(got.cols() == want.cols());
    CHECK(got.max_abs_diff(want) <= tol);
}

inline void check_close(const CVec& got, const CVec& want, double tol = 1e-12) {
    REQUIRE(got.dim() == want.dim());
    for (std::size_t i = 0; i < got.dim(); ++i)
        CHECK(std::abs(got[i] - want[i]) <= tol);
}

inline void check_direction(const Direction& got, const Direction& want, double tol = 1e-12) {
    CHECK(std::abs(got.x - want.x) <= tol);
    CHECK(std::abs(got.y - want.y) <= tol);
    CHECK(std::abs(got.z - want.z) <= tol);
}

inline CMat random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    CMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return m;
}

inline CMat random_hermitian(Rng& rng, std::size_t n) {
    const CMat m = random_matrix(rng, n, n);
    CMat h = m + m.adjoint();
    return 0.5 * cplx{1.0, 0.0} * h;
}

inline CMat random_psd(Rng& rng, std::size_t n) {
    const CMat m = random_matrix(rng, n, n);
    return matmul(m, m.adjoint());
}

inline Direction random_direction(Rng& rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 6.283185307179586);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

inline CVec random_two_qubit_ket(Rng& rng) {
    CVec v(4);
    double n2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        v[i] = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        n2 += std::norm(v[i]);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < 4; ++i) v[i] *= inv;
    return v;
}

} // namespace orienteer::test
