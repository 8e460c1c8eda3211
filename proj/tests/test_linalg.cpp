#include "test_helpers.hpp"

using namespace orienteer;
using namespace orienteer::test;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("matmul identities and Pauli algebra") {
    const CMat i2 = CMat::identity(2);
    check_close(matmul(i2, i2), i2);
    check_close(matmul(pauli_x(), pauli_x()), i2);

    // sx * sy, expanded by hand: rows (i, 0) on the diagonal of sz scaled by i.
    const CMat want(2, 2, {I, 0.0, 0.0, -I});
    check_close(matmul(pauli_x(), pauli_y()), want);

    CHECK_THROWS_AS(matmul(CMat(2, 3), CMat(2, 2)), std::invalid_argument);
}

TEST_CASE("matmul associativity on random triples") {
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const CMat a = random_matrix(rng, 3, 4);
        const CMat b = random_matrix(rng, 4, 2);
        const CMat c = random_matrix(rng, 2, 5);
        check_close(matmul(matmul(a, b), c), matmul(a, matmul(b, c)), 1e-12);
    }
}

TEST_CASE("kron basics") {
    check_close(kron(CMat::identity(2), CMat::identity(2)), CMat::identity(4));

    const CVec zero{1.0, 0.0}, one{0.0, 1.0};
    check_close(kron(zero, one), CVec{0.0, 1.0, 0.0, 0.0});

    // sz x sx in blocks: +sx upper-left, -sx lower-right.
    CMat want(4, 4);
    want(0, 1) = 1.0;
    want(1, 0) = 1.0;
    want(2, 3) = -1.0;
    want(3, 2) = -1.0;
    check_close(kron(pauli_z(), pauli_x()), want);
}

TEST_CASE("kron dimensions multiply and bilinearity holds") {
    Rng rng(12);
    const CMat a = random_matrix(rng, 2, 3);
    const CMat b = random_matrix(rng, 3, 2);
    CHECK(kron(a, b).rows() == 6);
    CHECK(kron(a, b).cols() == 6);

    const CMat a2 = random_matrix(rng, 2, 3);
    const cplx s{0.7, -0.3};
    check_close(kron(a + s * a2, b), kron(a, b) + s * kron(a2, b), 1e-12);
    check_close(kron(b, a + s * a2), kron(b, a) + s * kron(b, a2), 1e-12);
}

TEST_CASE("partial trace over the walker") {
    // Tr_W(I2 x sx) with walker_dim 2 = 2 sx
    check_close(partial_trace_walker(kron(CMat::identity(2), pauli_x()), 2),
                2.0 * cplx{1.0, 0.0} * pauli_x());

    // Tr_W(|1><1| x M) = M
    Rng rng(13);
    const CMat m = random_matrix(rng, 2, 2);
    CVec one3(3);
    one3[1] = 1.0;
    check_close(partial_trace_walker(kron(projector(one3), m), 3), m);

    // product state: Tr_W(rho_W x rho_C) = Tr(rho_W) rho_C
    const CMat rho_w = random_psd(rng, 5);
    const CMat rho_c = random_psd(rng, 2);
    check_close(partial_trace_walker(kron(rho_w, rho_c), 5), rho_w.trace() * rho_c, 1e-12);

    CHECK_THROWS_AS(partial_trace_walker(CMat(3, 3), 2), std::invalid_argument);
}

TEST_CASE("partial trace preserves trace") {
    Rng rng(14);
    for (int k = 0; k < 10; ++k) {
        const CMat op = random_matrix(rng, 8, 8);
        CHECK(std::abs(partial_trace_walker(op, 4).trace() - op.trace()) <= 1e-12);
        CHECK(std::abs(partial_trace_coin(op, 4).trace() - op.trace()) <= 1e-12);
    }
}

TEST_CASE("eig_hermitian on known spectra") {
    const auto ez = eig_hermitian(pauli_z());
    CHECK(ez.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ez.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

    const auto e4 = eig_hermitian(CMat::identity(4));
    for (double v : e4.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(1);
    CHECK_THROWS_AS(eig_hermitian(random_matrix(rng, 3, 3)), std::invalid_argument);
}

TEST_CASE("eig_hermitian reconstructs random Hermitian matrices") {
    Rng rng(15);
    for (std::size_t n : {2, 4, 7, 13}) {
        const CMat m = random_hermitian(rng, n);
        const auto eig = eig_hermitian(m);

        // ascending
        for (std::size_t k = 1; k < n; ++k)
            CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k] + 1e-14);

        // orthonormal columns
        check_close(matmul(eig.eigenvectors.adjoint(), eig.eigenvectors), CMat::identity(n),
                    1e-11);

        // V L V^dag = m
        CMat lambda(n, n);
        for (std::size_t k = 0; k < n; ++k) lambda(k, k) = eig.eigenvalues[k];
        check_close(matmul(eig.eigenvectors, matmul(lambda, eig.eigenvectors.adjoint())), m,
                    1e-10);
    }
}

TEST_CASE("eig_hermitian on a rank-1 projector") {
    // Projector onto the first parallel-basis ket has spectrum (0,0,0,1).
    const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
    CVec psi{s3 / 2.0, 1.0 / (2.0 * s2), -1.0 / (2.0 * s2), 0.0};
    const auto eig = eig_hermitian(projector(psi));
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.eigenvalues[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.eigenvalues[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_function computes matrix square roots") {
    Rng rng(16);
    const CMat p = random_psd(rng, 4);
    const CMat r = hermitian_function(p, [](double x) { return std::sqrt(std::max(x, 0.0)); });
    check_close(matmul(r, r), p, 1e-9);
}
