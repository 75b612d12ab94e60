#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace entwit;
using namespace testing_helpers;

namespace {

// Bisection of a continuous scalar function with a sign change on [lo, hi].
template <typename F>
double bisect(F f, double lo, double hi, int iters = 60) {
    double flo = f(lo);
    for (int k = 0; k < iters; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("bell states: amplitudes, orthogonality, norm") {
    const Ket phi_p = bell(BellState::PhiPlus);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(phi_p.amps[0] == cplx(r));
    CHECK(phi_p.amps[1] == cplx(0.0));
    CHECK(phi_p.amps[2] == cplx(0.0));
    CHECK(phi_p.amps[3] == cplx(r));

    CHECK(std::abs(inner(phi_p, bell(BellState::PhiMinus))) < 1e-15);
    CHECK(std::abs(inner(bell(BellState::PsiMinus), bell(BellState::PsiMinus)) - 1.0) <
          1e-15);
}

TEST_CASE("werner(0) is the maximally mixed state") {
    const auto rho = werner(0.0);
    CHECK((rho.matrix - cplx(0.25) * CMatrix::identity(4)).frobenius_norm() < 1e-15);
}

TEST_CASE("werner PT minimum eigenvalue matches (1-3p)/4 on a grid") {
    for (int k = 0; k < 50; ++k) {
        const double p = k / 49.0;
        CHECK(ppt_min_eigenvalue(werner(p)) ==
              Catch::Approx((1.0 - 3.0 * p) / 4.0).margin(1e-10));
    }
}

TEST_CASE("werner PT eigenvalue changes sign at p = 1/3") {
    CHECK(ppt_min_eigenvalue(werner(1.0 / 3.0 - 1e-6)) > 0.0);
    CHECK(ppt_min_eigenvalue(werner(1.0 / 3.0 + 1e-6)) < 0.0);
}

TEST_CASE("werner rejects p outside [0,1]") {
    CHECK_THROWS_AS(werner(-0.01), std::domain_error);
    CHECK_THROWS_AS(werner(1.01), std::domain_error);
}

TEST_CASE("phi+ witness expectation on werner(1) is -1/2") {
    // (1-3p)/4 at p = 1
    const auto w = witness_from_ppt(bell(BellState::PhiPlus));
    CHECK(eval_linear(w, werner(1.0)) == Catch::Approx(-0.5).margin(1e-12));
}

TEST_CASE("rho_b is normalized across the parameter range") {
    for (double a : {0.0, 2.5, 5.0})
        CHECK(rho_b(a).matrix.trace().real() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("rho_b rejects parameters outside [0,5]") {
    CHECK_THROWS_AS(rho_b(-0.1), std::domain_error);
    CHECK_THROWS_AS(rho_b(5.1), std::domain_error);
}

TEST_CASE("rho_b PPT region is [1, 4]") {
    // NPPT also below a = 1: the a <-> 5-a symmetry mirrors the boundary
    // at 4 down to 1.
    for (double a : {1.0, 2.0, 3.0, 3.5, 4.0})
        CHECK(ppt_min_eigenvalue(rho_b(a)) >= -1e-10);
    for (double a : {0.0, 0.5, 4.5, 5.0}) CHECK(ppt_min_eigenvalue(rho_b(a)) < -1e-4);
}

TEST_CASE("rho_b PT boundary sits at a = 4 under bisection") {
    const double root = bisect(
        [](double a) { return ppt_min_eigenvalue(rho_b(a)); }, 3.5, 4.5);
    CHECK(root == Catch::Approx(4.0).margin(1e-6));
}

TEST_CASE("map-extended rho_b turns negative past a = 3") {
    const PositiveMap m = choi_map();
    CHECK(min_eigenvalue(apply_extended(m, rho_b(2.9))) > 0.0);
    CHECK(min_eigenvalue(apply_extended(m, rho_b(3.1))) < 0.0);
    const double root = bisect(
        [&](double a) { return min_eigenvalue(apply_extended(m, rho_b(a))); }, 2.5,
        3.5);
    CHECK(root == Catch::Approx(3.0).margin(1e-6));
}

TEST_CASE("schmidt weight anchors") {
    CHECK(schmidt_weight(bell(BellState::PhiMinus)) == Catch::Approx(0.5).margin(1e-12));

    const Ket product = Ket::create({2, 2}, {1.0, 0.0, 0.0, 0.0});
    CHECK(schmidt_weight(product) == Catch::Approx(1.0).margin(1e-12));

    // the Schmidt definition gives 1/2 here; the largest-amplitude
    // convention gives 1/4
    CHECK(schmidt_weight(qutrit_psi()) == Catch::Approx(0.5).margin(1e-12));
    CHECK(basis_weight(qutrit_psi()) == Catch::Approx(0.25).margin(1e-15));
}

TEST_CASE("schmidt weight is invariant under local unitaries") {
    Rng rng(41);
    const Ket psi = qutrit_psi();
    const double s0 = schmidt_weight(psi);
    for (int t = 0; t < 20; ++t) {
        const CMatrix u = random_unitary(3, rng);
        const CMatrix v = random_unitary(3, rng);
        std::vector<cplx> rotated(9, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        rotated[static_cast<size_t>(i) * 3 + j] +=
                            u(i, k) * v(j, l) * psi.amp(k, l);
        const Ket rot{{3, 3}, rotated};
        CHECK(schmidt_weight(rot) == Catch::Approx(s0).margin(1e-10));
    }
}

TEST_CASE("random product states are valid, PPT, rank one and reproducible") {
    const auto rho = random_product_state({3, 3}, 77u);
    CHECK(rho.matrix.trace().real() == Catch::Approx(1.0).margin(1e-12));
    CHECK(ppt_min_eigenvalue(rho) >= -1e-10);

    const auto eig = hermitian_eig(rho.matrix);
    CHECK(eig.values.back() == Catch::Approx(1.0).margin(1e-10));
    for (size_t k = 0; k + 1 < eig.values.size(); ++k)
        CHECK(std::abs(eig.values[k]) < 1e-10);

    const auto again = random_product_state({3, 3}, 77u);
    CHECK((rho.matrix - again.matrix).frobenius_norm() == 0.0);

    const auto other = random_product_state({3, 3}, 78u);
    CHECK((rho.matrix - other.matrix).frobenius_norm() > 1e-3);
}

TEST_CASE("constructors validate the density-matrix invariants") {
    CMatrix bad = CMatrix::identity(4);
    bad(0, 0) = 2.0; // trace 5
    CHECK_THROWS_AS(DensityMatrix::create({2, 2}, bad), std::invalid_argument);

    CMatrix negative = CMatrix::identity(4);
    negative(0, 0) = -0.5;
    negative(1, 1) = 1.5; // trace ok, not PSD
    CHECK_THROWS_AS(DensityMatrix::create({2, 2}, negative), std::invalid_argument);
}

TEST_CASE("two-qubit states have at most one negative PT eigenvalue") {
    Rng rng(42);
    for (int t = 0; t < 100; ++t) {
        const auto rho = random_density({2, 2}, rng);
        const auto eig =
            hermitian_eig(partial_transpose(rho.matrix, rho.dims, Subsystem::B));
        int negatives = 0;
        for (double v : eig.values)
            if (v < -1e-12) ++negatives;
        CHECK(negatives <= 1);
    }
}
