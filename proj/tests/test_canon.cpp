#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "ppi/canon.hpp"
#include "ppi/errors.hpp"
#include "ppi/isometry.hpp"
#include "ppi/linalg.hpp"
#include "ppi/matrix.hpp"
#include "ppi/numrange.hpp"
#include "ppi/rand.hpp"

#include "test_support.hpp"

using namespace ppi;
using ts::diff;
using ts::unitary_defect;

namespace {

// every invariant the staircase data promises, checked directly
void check_staircase(const StaircaseForm& sf, const ComplexMatrix& a) {
    CHECK(sf.residual <= 1e-8);
    CHECK(unitary_defect(sf.v) <= 1e-9);
    REQUIRE(sf.sizes.size() == sf.k);
    for (std::size_t i = 0; i + 1 < sf.sizes.size(); ++i) CHECK(sf.sizes[i] >= sf.sizes[i + 1]);

    for (const ComplexMatrix& s : sf.steps)
        CHECK(diff(adjoint(s) * s, ComplexMatrix::identity(s.cols())) <= 1e-9);
    if (sf.core > 0)
        CHECK(diff(adjoint(sf.b) * sf.b + adjoint(sf.c) * sf.c,
                   ComplexMatrix::identity(sf.core)) <= 1e-9);

    CHECK(diff(adjoint(sf.v) * a * sf.v, assemble(sf)) <= std::max(sf.residual * 4.0, 1e-9));
}

}  // namespace

TEST_SUITE("canon") {

TEST_CASE("staircase of generated power partial isometries") {
    Rng seed_rng(41);
    const std::vector<std::vector<std::size_t>> profiles = {
        {2}, {3, 1}, {2, 2, 1}, {3, 2, 2, 1}, {1, 1, 1, 1, 1}};
    for (const auto& profile : profiles) {
        const std::size_t core = 1 + seed_rng() % 3;
        const ComplexMatrix a = random_ppi(profile, core, seed_rng());
        const StaircaseForm sf = staircase_form(a, profile.size());
        CHECK(sf.k == profile.size());
        CHECK(sf.core == rank_tol(matrix_power(a, sf.k)));
        CHECK(sf.sizes == profile);
        check_staircase(sf, a);
    }

    // a conjugated generator output hands back exactly the requested shape
    Rng rng(51);
    const ComplexMatrix g = random_ppi({2, 1}, 2, 52);
    const ComplexMatrix w = random_unitary(5, rng);
    const StaircaseForm back = staircase_form(adjoint(w) * g * w, 2);
    CHECK(back.sizes == std::vector<std::size_t>{2, 1});
    CHECK(back.core == 2);
}

TEST_CASE("level count is capped by the kernel chain") {
    Rng rng(44);
    const ComplexMatrix a =
        direct_sum(ComplexMatrix::jordan_block(3), random_unitary(2, rng));  // ascent 3
    CHECK(staircase_form(a, 1).k == 1);
    CHECK(staircase_form(a, 2).k == 2);
    CHECK(staircase_form(a, 3).k == 3);
    CHECK(staircase_form(a, 50).k == 3);  // asking deeper adds nothing

    const StaircaseForm sf = staircase_form(a, 3);
    CHECK(sf.sizes == std::vector<std::size_t>{1, 1, 1});
    CHECK(sf.core == 2);
    check_staircase(sf, a);
}

TEST_CASE("inputs outside the model are refused") {
    // not a partial isometry at the first power
    CHECK_THROWS_AS(staircase_form(cplx{0.5} * ComplexMatrix::jordan_block(3), 1),
                    NotPowerPartialIsometry);

    // partial isometry whose square fails: two levels are one too many
    const ComplexMatrix a = ts::nilpotent_index_one();
    CHECK_NOTHROW(staircase_form(a, 1));
    try {
        staircase_form(a, 2);
        FAIL("expected NotPowerPartialIsometry");
    } catch (const NotPowerPartialIsometry& e) {
        CHECK(e.power == 2);
    }

    // invertible input degenerates to a pure core: no levels, conjugator I
    const StaircaseForm inv = staircase_form(ComplexMatrix::identity(3), 1);
    CHECK(inv.k == 0);
    CHECK(inv.core == 3);
    CHECK(inv.sizes.empty());
    CHECK(inv.c == ComplexMatrix::identity(3));
}

TEST_CASE("normalized staircase has identity steps and a jordan tail") {
    Rng seed_rng(42);
    for (int t = 0; t < 6; ++t) {
        const ComplexMatrix a = random_ppi({3, 2, 1}, 2, seed_rng());
        const NormalizedStaircase ns = normalize_staircase(staircase_form(a, 3));

        for (const ComplexMatrix& s : ns.staircase.steps) {
            // [I; 0] shape: identity on top, zero rows below
            const std::size_t w = s.cols();
            CHECK(diff(block(s, 0, 0, w, w), ComplexMatrix::identity(w)) <= 1e-9);
            if (s.rows() > w) CHECK(max_abs(block(s, w, 0, s.rows() - w, w)) <= 1e-9);
        }
        CHECK(!ns.tail.unitary_summand.has_value());
        for (std::size_t i = 0; i + 1 < ns.tail.block_sizes.size(); ++i)
            CHECK(ns.tail.block_sizes[i] >= ns.tail.block_sizes[i + 1]);

        // combined reconstruction: W* A W = staircase (+) tail
        const ComplexMatrix w = ns.staircase.v;
        CHECK(diff(ns.tail.conjugator, w) == 0.0);
        const ComplexMatrix model =
            direct_sum(assemble(ns.staircase), assemble(ns.tail));
        CHECK(diff(adjoint(w) * a * w, model) <= 1e-8 * std::max(1.0, frobenius_norm(a)));
    }
}

TEST_CASE("unitary plus jordan decomposition round-trips") {
    Rng rng(43);
    for (int t = 0; t < 8; ++t) {
        const std::size_t udim = rng() % 3;
        std::vector<ComplexMatrix> blocks;
        std::vector<std::size_t> sizes;
        if (udim > 0) blocks.push_back(random_unitary(udim, rng));
        for (std::size_t b = 0; b < 1 + rng() % 3; ++b) {
            const std::size_t s = 1 + rng() % 4;
            sizes.push_back(s);
            blocks.push_back(ComplexMatrix::jordan_block(s));
        }
        const ComplexMatrix model = direct_sum(blocks);
        const ComplexMatrix w = random_unitary(model.rows(), rng);
        const ComplexMatrix a = adjoint(w) * model * w;

        const JordanSpec spec = halmos_wallen(a);
        CHECK(ts::same_multiset(spec.block_sizes, sizes));
        CHECK(spec.unitary_summand.has_value() == (udim > 0));
        if (spec.unitary_summand) {
            CHECK(spec.unitary_summand->rows() == udim);
            CHECK(unitary_defect(*spec.unitary_summand) <= 1e-10);
        }
        CHECK(spec.residual <= 1e-8 * std::max(1.0, frobenius_norm(a)));
        CHECK(diff(adjoint(spec.conjugator) * a * spec.conjugator, assemble(spec)) <=
              std::max(4.0 * spec.residual, 1e-9));
    }
}

TEST_CASE("summand presence matches the unitary part predicate") {
    Rng rng(47);
    for (int t = 0; t < 12; ++t) {
        const std::size_t udim = rng() % 3;  // a third of the draws are purely nilpotent
        std::vector<ComplexMatrix> blocks;
        if (udim > 0) blocks.push_back(random_unitary(udim, rng));
        for (std::size_t b = 0; b < 1 + rng() % 2; ++b)
            blocks.push_back(ComplexMatrix::jordan_block(1 + rng() % 3));
        const ComplexMatrix model = direct_sum(blocks);
        const ComplexMatrix w = random_unitary(model.rows(), rng);
        const ComplexMatrix a = adjoint(w) * model * w;

        CHECK(halmos_wallen(a).unitary_summand.has_value() == has_unitary_part(a));
    }
}

TEST_CASE("block sizes agree with the kernel chain rank differences") {
    // independent route to the multiset: with U (+) J_{k_1} (+) ... (+) J_{k_m},
    // rank A^j = dim U + sum_i max(k_i - j, 0), so the count of blocks of size
    // >= j is rank A^{j-1} - rank A^j and exact sizes follow by differencing.
    Rng rng(48);
    for (int t = 0; t < 8; ++t) {
        const std::size_t udim = rng() % 3;
        std::vector<ComplexMatrix> blocks;
        if (udim > 0) blocks.push_back(random_unitary(udim, rng));
        for (std::size_t b = 0; b < 1 + rng() % 3; ++b)
            blocks.push_back(ComplexMatrix::jordan_block(1 + rng() % 4));
        const ComplexMatrix model = direct_sum(blocks);
        const ComplexMatrix w = random_unitary(model.rows(), rng);
        const ComplexMatrix a = adjoint(w) * model * w;

        std::vector<std::size_t> at_least;  // at_least[j-1] = #blocks of size >= j
        ComplexMatrix p = a;
        std::size_t prev = rank_tol(a.rows() ? ComplexMatrix::identity(a.rows()) : a);
        while (true) {
            const std::size_t r = rank_tol(p);
            if (prev == r) break;
            at_least.push_back(prev - r);
            prev = r;
            p = p * a;
        }
        std::vector<std::size_t> from_ranks;
        for (std::size_t j = 0; j < at_least.size(); ++j) {
            const std::size_t next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
            for (std::size_t c = 0; c < at_least[j] - next; ++c) from_ranks.push_back(j + 1);
        }

        CHECK(ts::same_multiset(halmos_wallen(a).block_sizes, from_ranks));
    }
}

TEST_CASE("normalization preserves the support radius") {
    Rng rng(49);
    const ComplexMatrix a = random_ppi({2, 2, 1}, 2, rng());
    const NormalizedStaircase ns = normalize_staircase(staircase_form(a, 3));
    const ComplexMatrix model = direct_sum(assemble(ns.staircase), assemble(ns.tail));
    for (double theta : {0.0, 0.7, 2.9, 4.4}) {
        CHECK(support_radius(a, theta) ==
              doctest::Approx(support_radius(model, theta)).epsilon(1e-8));
    }
}

TEST_CASE("block sizes come out nonincreasing with the largest equal to the ascent") {
    Rng rng(44);
    const ComplexMatrix model = direct_sum(
        {ComplexMatrix::jordan_block(2), ComplexMatrix::jordan_block(4), random_unitary(2, rng)});
    const ComplexMatrix w = random_unitary(8, rng);
    const JordanSpec spec = halmos_wallen(adjoint(w) * model * w);
    REQUIRE(!spec.block_sizes.empty());
    CHECK(spec.block_sizes.front() == 4);
    for (std::size_t i = 0; i + 1 < spec.block_sizes.size(); ++i)
        CHECK(spec.block_sizes[i] >= spec.block_sizes[i + 1]);
}

TEST_CASE("finite index blocks the decomposition") {
    try {
        halmos_wallen(ts::j3_plus_defect(0.4));
        FAIL("expected NotInfiniteIndex");
    } catch (const NotInfiniteIndex& e) {
        CHECK(e.power == 2);
    }
}

TEST_CASE("a unitary input is its own decomposition") {
    Rng rng(45);
    const ComplexMatrix u = random_unitary(3, rng);
    const JordanSpec spec = halmos_wallen(u);
    CHECK(spec.block_sizes.empty());
    REQUIRE(spec.unitary_summand.has_value());
    CHECK(spec.unitary_summand->rows() == 3);
    CHECK(spec.residual <= 1e-10);
}

TEST_CASE("generator covers the two boundary families") {
    // all-ones profile with a one-dimensional core lands in the two-parameter
    // family: p = n-1 and the recovered moduli sit on the unit circle
    for (unsigned seed : {60u, 61u, 62u}) {
        const ComplexMatrix a = random_ppi({1, 1, 1}, 1, seed);
        const PmaxClassification cls = classify_pmax(a);
        CHECK(cls.kind == PmaxKind::P_EQUALS_N_MINUS_1);
        CHECK(cls.p == PpiIndex::finite(3));
        CHECK(cls.a_modulus * cls.a_modulus + cls.b_modulus * cls.b_modulus ==
              doctest::Approx(1.0).epsilon(1e-8));
        CHECK(cls.a_modulus > 1e-8);
        CHECK(cls.b_modulus > 1e-8);
    }

    // an empty core leaves a pure jordan sum behind
    const JordanSpec spec = halmos_wallen(random_ppi({2, 1}, 0, 63));
    CHECK(spec.block_sizes == std::vector<std::size_t>{2, 1});
    CHECK(!spec.unitary_summand.has_value());
}

TEST_CASE("index classification") {
    CHECK(classify_pmax(ComplexMatrix::jordan_block(3)).kind == PmaxKind::P_INFINITE);

    // two-parameter model: superdiagonal ones, trailing column (a, b)
    const double am = 0.6, bm = 0.8;
    ComplexMatrix m(3, 3);
    m(0, 1) = 1.0;
    m(1, 2) = am * std::polar(1.0, 0.3);
    m(2, 2) = bm * std::polar(1.0, -1.1);
    const PmaxClassification cls = classify_pmax(m);
    CHECK(cls.kind == PmaxKind::P_EQUALS_N_MINUS_1);
    CHECK(cls.p == PpiIndex::finite(2));
    CHECK(cls.a_modulus == doctest::Approx(am).epsilon(1e-9));
    CHECK(cls.b_modulus == doctest::Approx(bm).epsilon(1e-9));

    // conjugation does not disturb the classification
    Rng rng(46);
    const ComplexMatrix w = random_unitary(3, rng);
    CHECK(classify_pmax(adjoint(w) * m * w).kind == PmaxKind::P_EQUALS_N_MINUS_1);

    // the balanced instance: superdiagonal ones, trailing column (1,1)/sqrt(2)
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix e5(4, 4);
    e5(0, 1) = 1.0;
    e5(1, 2) = 1.0;
    e5(2, 3) = r;
    e5(3, 3) = r;
    const PmaxClassification bal = classify_pmax(e5);
    CHECK(bal.kind == PmaxKind::P_EQUALS_N_MINUS_1);
    CHECK(bal.p == PpiIndex::finite(3));
    CHECK(bal.a_modulus == doctest::Approx(r).epsilon(1e-9));
    CHECK(bal.b_modulus == doctest::Approx(r).epsilon(1e-9));

    CHECK(classify_pmax(cplx{0.5} * ComplexMatrix::identity(2)).kind == PmaxKind::P_OTHER);
    ComplexMatrix one(1, 1);
    one(0, 0) = 0.5;  // p = 0 = n-1, but the model needs n >= 2
    CHECK(classify_pmax(one).kind == PmaxKind::P_OTHER);
}

}  // TEST_SUITE
