// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confsym/diff_op.hpp"
#include "confsym/randomgen.hpp"

using namespace confsym;

namespace {

Poly var(int n, int i) { return Poly::variable(n, i); }

DiffOp random_op(Rng& rng, int n, int max_order, int max_degree) {
    DiffOp d(n);
    for (const auto& beta : multi_indices_up_to_degree(n, max_order)) {
        if (rng.next() % 2 == 0) continue;
        d.add_term(beta, random_poly(rng, n, max_degree, false));
    }
    return d;
}

// Euler operator x . grad
DiffOp euler_op(int n) {
    DiffOp d(n);
    for (int i = 1; i <= n; ++i) d.add_term(MultiIndex(n).plus(i), var(n, i));
    return d;
}

}  // namespace

TEST_CASE("operator application") {
    const int n = 3;
    DiffOp lap = DiffOp::laplacian(n);
    Poly r2 = var(n, 1) * var(n, 1) + var(n, 2) * var(n, 2) + var(n, 3) * var(n, 3);
    CHECK(lap.apply(r2) == Poly::constant(n, Rational(6)));

    DiffOp rot(n);
    rot.add_term(MultiIndex(n).plus(2), var(n, 1));
    rot.add_term(MultiIndex(n).plus(1), -var(n, 2));
    CHECK(rot.apply(var(n, 1) * var(n, 2)) == var(n, 1) * var(n, 1) - var(n, 2) * var(n, 2));

    Rng rng(3);
    Poly f = random_poly(rng, n, 3, false);
    CHECK(DiffOp::identity(n).apply(f) == f);
    CHECK_THROWS_AS(lap.apply(Poly::variable(2, 1)), std::invalid_argument);
}

TEST_CASE("normal-ordered composition") {
    const int n = 3;
    DiffOp d1 = DiffOp::partial(n, 1);
    DiffOp x1 = DiffOp::multiplication(var(n, 1));
    DiffOp prod = compose(d1, x1);
    DiffOp expect(n);
    expect.add_term(MultiIndex(n).plus(1), var(n, 1));
    expect.add_term(MultiIndex(n), Poly::constant(n, Rational(1)));
    CHECK(prod == expect);

    DiffOp lap = DiffOp::laplacian(n);
    DiffOp lap2 = compose(lap, lap);
    DiffOp expect2(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) expect2.add_term(MultiIndex(n).plus(i, 2).plus(j, 2), Poly::constant(n, Rational(1)));
    CHECK(lap2 == expect2);
    CHECK(lap2.order() == 4);

    DiffOp e1(n);
    e1.add_term(MultiIndex(n).plus(1), var(n, 1));  // x1 d1
    DiffOp sq = compose(e1, e1);
    DiffOp expect3(n);
    expect3.add_term(MultiIndex(n).plus(1, 2), var(n, 1) * var(n, 1));
    expect3.add_term(MultiIndex(n).plus(1), var(n, 1));
    CHECK(sq == expect3);
}

TEST_CASE("commutators") {
    const int n = 3;
    DiffOp d1 = DiffOp::partial(n, 1);
    CHECK(commutator(d1, DiffOp::multiplication(var(n, 1))) == DiffOp::identity(n));
    CHECK(commutator(d1, DiffOp::partial(n, 2)).is_zero());

    // [Lap, x.grad] = 2 Lap, by direct Leibniz expansion
    DiffOp lap = DiffOp::laplacian(n);
    CHECK(commutator(lap, euler_op(n)) == Rational(2) * lap);
}

TEST_CASE("laplacian constructor") {
    DiffOp l1 = DiffOp::laplacian(1);
    DiffOp expect(1);
    expect.add_term(MultiIndex(1, {2}), Poly::constant(1, Rational(1)));
    CHECK(l1 == expect);

    const int n = 3;
    DiffOp l3 = DiffOp::laplacian(n);
    CHECK(l3.order() == 2);
    for (int i = 1; i <= n; ++i) CHECK(l3.apply(var(n, i)).is_zero());
}

TEST_CASE("zero decision in normal form") {
    const int n = 2;
    CHECK(commutator(DiffOp::partial(n, 1), DiffOp::partial(n, 2)).is_zero());
    DiffOp c = commutator(DiffOp::partial(n, 1), DiffOp::multiplication(var(n, 1))) - DiffOp::identity(n);
    CHECK(c.is_zero());
    CHECK(!DiffOp::partial(n, 1).is_zero());
}

TEST_CASE("composition is compatible with application") {
    Rng rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2 + static_cast<int>(rng.next() % 2);
        DiffOp a = random_op(rng, n, 2, 3);
        DiffOp b = random_op(rng, n, 2, 3);
        Poly f = random_poly(rng, n, 3, false);
        CHECK(compose(a, b).apply(f) == a.apply(b.apply(f)));
    }
}

TEST_CASE("composition is associative and multiplication operators commute") {
    Rng rng(22);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 2;
        DiffOp a = random_op(rng, n, 2, 2);
        DiffOp b = random_op(rng, n, 1, 2);
        DiffOp c = random_op(rng, n, 1, 2);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));

        DiffOp ma = DiffOp::multiplication(random_poly(rng, n, 3, false));
        DiffOp mb = DiffOp::multiplication(random_poly(rng, n, 3, false));
        CHECK(compose(ma, mb) == compose(mb, ma));
    }
}

TEST_CASE("jacobi identity") {
    Rng rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 2;
        DiffOp a = random_op(rng, n, 1, 2);
        DiffOp b = random_op(rng, n, 1, 2);
        DiffOp c = random_op(rng, n, 1, 2);
        DiffOp jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("pretty printer is deterministic and readable") {
    const int n = 2;
    DiffOp d(n);
    d.add_term(MultiIndex(n).plus(1), var(n, 1));
    d.add_term(MultiIndex(n), Poly::constant(n, Rational(1, 2)));
    CHECK(d.str() == "x1*d1 + 1/2");
}
