#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace entwit;
using namespace testing_helpers;

TEST_CASE("identity has all-ones spectrum") {
    const auto eig = hermitian_eig(CMatrix::identity(4));
    for (double v : eig.values) CHECK(v == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("sigma3 spectrum is {-1, +1}") {
    const auto eig = hermitian_eig(OperatorBasis::pauli().elements[3]);
    CHECK(eig.values[0] == Catch::Approx(-1.0).margin(1e-14));
    CHECK(eig.values[1] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("werner(1) partial transpose has min eigenvalue -1/2") {
    // (1 - 3p)/4 at p = 1
    const CMatrix pt = partial_transpose(werner(1.0).matrix, {2, 2}, Subsystem::B);
    CHECK(hermitian_eig(pt).values.front() == Catch::Approx(-0.5).margin(1e-12));
}

TEST_CASE("eigensolver residuals, orthonormality and trace sum on random input") {
    Rng rng(21);
    for (int n = 2; n <= 9; ++n) {
        for (int t = 0; t < 10; ++t) {
            const CMatrix m = random_hermitian(n, rng);
            const auto eig = hermitian_eig(m);

            REQUIRE(static_cast<int>(eig.values.size()) == n);
            CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));

            double trace_sum = 0.0;
            for (int k = 0; k < n; ++k) {
                trace_sum += eig.values[k];
                CMatrix v(n, 1);
                for (int i = 0; i < n; ++i) v(i, 0) = eig.vectors(i, k);
                CHECK((m * v - eig.values[k] * v).frobenius_norm() < 1e-10);
            }
            CHECK(trace_sum == Catch::Approx(m.trace().real()).margin(1e-10));
            CHECK((eig.vectors.dagger() * eig.vectors - CMatrix::identity(n))
                      .frobenius_norm() < 1e-10);
        }
    }
}

TEST_CASE("eigenvector phase convention: largest component real positive") {
    Rng rng(22);
    const CMatrix m = random_hermitian(5, rng);
    const auto eig = hermitian_eig(m);
    for (int k = 0; k < 5; ++k) {
        double best = 0.0;
        cplx best_v = 0.0;
        for (int i = 0; i < 5; ++i)
            if (std::abs(eig.vectors(i, k)) > best) {
                best = std::abs(eig.vectors(i, k));
                best_v = eig.vectors(i, k);
            }
        CHECK(best_v.imag() == 0.0);
        CHECK(best_v.real() > 0.0);
    }
}

TEST_CASE("non-Hermitian input is rejected with the defect attached") {
    CMatrix m = CMatrix::identity(3);
    m(0, 1) = 0.5; // no matching conjugate below the diagonal
    try {
        hermitian_eig(m);
        FAIL("expected HermiticityError");
    } catch (const HermiticityError& e) {
        CHECK(e.defect == Catch::Approx(0.5).margin(1e-12));
    }
}

TEST_CASE("singular values of the identity are all one") {
    const auto sv = singular_values(CMatrix::identity(3));
    for (double s : sv) CHECK(s == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("singular values of the 4-term qutrit coefficient matrix") {
    // m m^dagger = [[1/4,0,1/4],[0,1/2,0],[1/4,0,1/4]] with eigenvalues
    // {1/2, 1/2, 0}
    const CMatrix m = qutrit_psi().coefficient_matrix();
    const auto sv = singular_values(m);
    const double r = std::sqrt(0.5);
    CHECK(sv[0] == Catch::Approx(r).margin(1e-12));
    CHECK(sv[1] == Catch::Approx(r).margin(1e-12));
    CHECK(sv[2] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("singular values of a rank-1 outer product") {
    Rng rng(23);
    CMatrix u(3, 1), v(3, 1);
    for (int i = 0; i < 3; ++i) {
        u(i, 0) = cplx(rng.gaussian(), rng.gaussian());
        v(i, 0) = cplx(rng.gaussian(), rng.gaussian());
    }
    const CMatrix outer = u * v.dagger();
    const auto sv = singular_values(outer);
    CHECK(sv[0] == Catch::Approx(u.frobenius_norm() * v.frobenius_norm()).margin(1e-10));
    CHECK(sv[1] == Catch::Approx(0.0).margin(1e-10));
    CHECK(sv[2] == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("eigensolver is deterministic") {
    Rng rng(24);
    const CMatrix m = random_hermitian(7, rng);
    const auto a = hermitian_eig(m);
    const auto b = hermitian_eig(m);
    CHECK((a.vectors - b.vectors).frobenius_norm() == 0.0);
    CHECK(a.values == b.values);
}
