#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace entwit;
using namespace testing_helpers;

TEST_CASE("bases are Hermitian, traceless past the identity, and orthogonal") {
    for (int d : {2, 3}) {
        const auto& basis = OperatorBasis::for_dim(d);
        REQUIRE(static_cast<int>(basis.elements.size()) == d * d);
        CHECK((basis.elements[0] - CMatrix::identity(d)).frobenius_norm() == 0.0);
        for (int i = 0; i < d * d; ++i) {
            CHECK(basis.elements[i].hermiticity_defect() < 1e-15);
            if (i > 0) CHECK(std::abs(basis.elements[i].trace()) < 1e-15);
            for (int j = 0; j < d * d; ++j) {
                const cplx t = (basis.elements[i] * basis.elements[j]).trace();
                if (i == j) {
                    CHECK(t.real() == Catch::Approx(basis.square_traces[i]).margin(1e-12));
                } else {
                    CHECK(std::abs(t) < 1e-12);
                }
            }
        }
    }
    CHECK_THROWS_AS(OperatorBasis::for_dim(4), DimensionError);
}

TEST_CASE("decompose of the normalized identity keeps only C00") {
    const CMatrix m = cplx(0.25) * CMatrix::identity(4);
    const auto dec = decompose(m, {2, 2});
    CHECK(dec.c00() == Catch::Approx(0.25).margin(1e-15));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != 0 || j != 0) CHECK(std::abs(dec.c(i, j)) < 1e-15);
}

TEST_CASE("decompose C00 anchors for the two witnesses") {
    const auto w = witness_from_ppt(bell(BellState::PhiPlus));
    CHECK(decompose(w.matrix, {2, 2}).c00() == Catch::Approx(0.25).margin(1e-12));

    const auto wb = bound_witness();
    CHECK(decompose(wb.matrix, {3, 3}).c00() ==
          Catch::Approx(2.0 / 9.0).margin(1e-10));
}

TEST_CASE("decomposition roundtrip on random Hermitian matrices") {
    Rng rng(31);
    for (Dims dims : {Dims{2, 2}, Dims{3, 3}}) {
        for (int t = 0; t < 200; ++t) {
            const CMatrix m = random_hermitian(dims.total(), rng);
            const auto dec = decompose(m, dims);
            CHECK((dec.reconstruct() - m).frobenius_norm() < 1e-10);
        }
    }
}

TEST_CASE("decomposition roundtrip on mixed dims") {
    Rng rng(32);
    const Dims dims{2, 3};
    const CMatrix m = random_hermitian(6, rng);
    const auto dec = decompose(m, dims);
    CHECK((dec.reconstruct() - m).frobenius_norm() < 1e-10);
}

TEST_CASE("decompose rejects non-Hermitian input") {
    CMatrix m = CMatrix::identity(4);
    m(1, 2) = cplx(0.0, 1.0);
    CHECK_THROWS_AS(decompose(m, {2, 2}), HermiticityError);
}

TEST_CASE("decompose rejects mismatched dims") {
    CHECK_THROWS_AS(decompose(CMatrix::identity(4), {3, 3}), DimensionError);
}
