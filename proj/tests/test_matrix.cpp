#include "doctest.h"

#include <cmath>

#include "ppi/matrix.hpp"
#include "ppi/rand.hpp"

#include "test_support.hpp"

using namespace ppi;
using ts::diff;

TEST_SUITE("matrix") {

TEST_CASE("constructors") {
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    CHECK(i3(0, 0) == cplx{1.0});
    CHECK(i3(0, 1) == cplx{0.0});

    const ComplexMatrix j = ComplexMatrix::jordan_block(4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(j(r, c) == (c == r + 1 ? cplx{1.0} : cplx{0.0}));

    // the 1x1 block has no superdiagonal: it is the zero matrix
    CHECK(max_abs(ComplexMatrix::jordan_block(1)) == 0.0);

    const ComplexMatrix d = ComplexMatrix::diagonal({{1, 2}, {3, -4}});
    CHECK(d(0, 0) == cplx(1, 2));
    CHECK(d(1, 1) == cplx(3, -4));
    CHECK(d(1, 0) == cplx{0.0});

    const ComplexMatrix f = ComplexMatrix::from_rows({{1, 2}, {3, 4}});
    CHECK(f(0, 1) == cplx{2.0});
    CHECK(f(1, 0) == cplx{3.0});
}

TEST_CASE("arithmetic and adjoint identities") {
    Rng rng(7);
    const ComplexMatrix a = random_gaussian(4, 3, rng);
    const ComplexMatrix b = random_gaussian(3, 5, rng);

    CHECK(diff(adjoint(adjoint(a)), a) == 0.0);
    CHECK(diff(adjoint(a * b), adjoint(b) * adjoint(a)) <= 1e-14);

    const ComplexMatrix c = random_gaussian(4, 3, rng);
    CHECK(diff((a + c) - c, a) <= 1e-14);
    CHECK(diff(cplx(2, 1) * a, a * cplx(2, 1)) == 0.0);
}

TEST_CASE("hermitian part") {
    Rng rng(8);
    const ComplexMatrix a = random_gaussian(5, 5, rng);
    const ComplexMatrix h = hermitian_part(a);
    CHECK(hermiticity_defect(h) <= 1e-14);
    CHECK(diff(h, cplx{0.5} * (a + adjoint(a))) == 0.0);
}

TEST_CASE("matrix power") {
    const ComplexMatrix j = ComplexMatrix::jordan_block(3);
    CHECK(diff(matrix_power(j, 0), ComplexMatrix::identity(3)) == 0.0);
    CHECK(max_abs(matrix_power(j, 3)) == 0.0);
    CHECK(matrix_power(j, 2)(0, 2) == cplx{1.0});

    Rng rng(9);
    const ComplexMatrix a = random_gaussian(4, 4, rng);
    CHECK(diff(matrix_power(a, 3), a * a * a) <= 1e-12 * max_abs(a * a * a));
}

TEST_CASE("kron dimensions and mixed product") {
    Rng rng(10);
    const ComplexMatrix a = random_gaussian(2, 3, rng);
    const ComplexMatrix b = random_gaussian(3, 2, rng);
    const ComplexMatrix c = random_gaussian(3, 2, rng);
    const ComplexMatrix d = random_gaussian(2, 4, rng);

    const ComplexMatrix lhs = kron(a, c) * kron(b, d);
    const ComplexMatrix rhs = kron(a * b, c * d);
    CHECK(lhs.rows() == 2 * 3);
    CHECK(lhs.cols() == 2 * 4);
    CHECK(diff(lhs, rhs) <= 1e-12);

    // explicit 2x2 block layout
    const ComplexMatrix e = ComplexMatrix::from_rows({{1, 2}, {3, 4}});
    const ComplexMatrix f = ComplexMatrix::from_rows({{0, 5}, {6, 7}});
    const ComplexMatrix k = kron(e, f);
    CHECK(k(0, 1) == cplx{5.0});
    CHECK(k(1, 2) == cplx{2.0 * 6.0});
    CHECK(k(3, 3) == cplx{4.0 * 7.0});

    // associativity, and the 1x1 identity acts neutrally on either side
    const ComplexMatrix g = random_gaussian(3, 3, rng);
    const ComplexMatrix h = random_gaussian(3, 3, rng);
    const ComplexMatrix m = random_gaussian(3, 3, rng);
    CHECK(diff(kron(kron(g, h), m), kron(g, kron(h, m))) <= 1e-10);
    CHECK(diff(kron(g, ComplexMatrix::identity(1)), g) == 0.0);
    CHECK(diff(kron(ComplexMatrix::identity(1), g), g) == 0.0);
}

TEST_CASE("direct sums") {
    const ComplexMatrix a = ComplexMatrix::from_rows({{1}});
    const ComplexMatrix b = ComplexMatrix::jordan_block(2);
    const ComplexMatrix s = direct_sum(a, b);
    CHECK(s.rows() == 3);
    CHECK(s(0, 0) == cplx{1.0});
    CHECK(s(1, 2) == cplx{1.0});
    CHECK(s(0, 1) == cplx{0.0});

    const ComplexMatrix t = direct_sum({a, b, a});
    CHECK(t.rows() == 4);
    CHECK(t(3, 3) == cplx{1.0});

    CHECK(trace(s) == trace(a) + trace(b));
    const double fa = frobenius_norm(a), fb = frobenius_norm(b);
    CHECK(frobenius_norm(s) == doctest::Approx(std::sqrt(fa * fa + fb * fb)).epsilon(1e-14));
}

TEST_CASE("block access") {
    Rng rng(11);
    const ComplexMatrix a = random_gaussian(5, 6, rng);
    const ComplexMatrix sub = block(a, 1, 2, 3, 3);
    CHECK(sub(0, 0) == a(1, 2));
    CHECK(sub(2, 2) == a(3, 4));

    ComplexMatrix z(5, 6);
    set_block(z, 1, 2, sub);
    CHECK(diff(block(z, 1, 2, 3, 3), sub) == 0.0);
    CHECK(z(0, 0) == cplx{0.0});

    const ComplexMatrix cols = columns(a, 2, 3);
    CHECK(diff(cols, block(a, 0, 2, 5, 3)) == 0.0);

    const ComplexMatrix cat = hcat(columns(a, 0, 2), columns(a, 2, 4));
    CHECK(diff(cat, a) == 0.0);
}

TEST_CASE("scalar summaries") {
    const ComplexMatrix a = ComplexMatrix::from_rows({{cplx(3, 4), 0}, {0, 1}});
    CHECK(max_abs(a) == 5.0);
    CHECK(is_finite(a));

    ComplexMatrix bad(1, 1);
    bad(0, 0) = cplx(std::nan(""), 0);
    CHECK(!is_finite(bad));
}

TEST_CASE("equality is exact") {
    ComplexMatrix a(2, 2), b(2, 2);
    a(0, 0) = 1.0;
    b(0, 0) = 1.0 + 1e-15;
    CHECK(a == a);
    CHECK(a != b);
}

}  // TEST_SUITE
