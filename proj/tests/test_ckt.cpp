// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confsym/ckt.hpp"
#include "confsym/randomgen.hpp"
#include "confsym/symmetry.hpp"

using namespace confsym;

namespace {

Poly var(int n, int i) { return Poly::variable(n, i); }

CKParams random_params(Rng& rng, int n) {
    CKParams p = CKParams::zero(n);
    for (int i = 0; i < n; ++i) {
        p.s[static_cast<size_t>(i)] = rng.coeff();
        p.r[static_cast<size_t>(i)] = rng.coeff();
    }
    p.lambda = rng.coeff();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational c = rng.coeff();
            p.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = c;
            p.m[static_cast<size_t>(j)][static_cast<size_t>(i)] = -c;
        }
    return p;
}

}  // namespace

TEST_CASE("conformal Killing fields from parameters") {
    const int n = 3;
    {
        CKParams p = CKParams::zero(n);
        p.r[0] = Rational(2);
        PolyField v = ckv_from_parameters(n, p);
        CHECK(v.at({0}) == var(n, 1) * var(n, 1) - var(n, 2) * var(n, 2) - var(n, 3) * var(n, 3));
        CHECK(v.at({1}) == Rational(2) * (var(n, 1) * var(n, 2)));
        CHECK(v.at({2}) == Rational(2) * (var(n, 1) * var(n, 3)));
    }
    {
        CKParams p = CKParams::zero(n);
        p.s[0] = Rational(1);
        PolyField v = ckv_from_parameters(n, p);
        CHECK(v.at({0}) == Poly::constant(n, Rational(-1)));
        CHECK(v.at({1}).is_zero());
        CHECK(v.at({2}).is_zero());
    }
    {
        CKParams p = CKParams::zero(n);
        p.lambda = Rational(1);
        PolyField v = ckv_from_parameters(n, p);
        for (int a = 0; a < n; ++a) CHECK(v.at({a}) == var(n, a + 1));
    }
    {
        CKParams p = CKParams::zero(n);
        p.m[0][1] = Rational(1);  // not skew
        CHECK_THROWS_AS(ckv_from_parameters(n, p), std::invalid_argument);
    }
}

TEST_CASE("valence-1 residual examples") {
    const int n = 3;
    CKParams p = CKParams::zero(n);
    p.lambda = Rational(1);
    CHECK(conformal_killing_residual(ckv_from_parameters(n, p), 1).is_zero());

    PolyField rot = make_poly_vector(n, {-var(n, 2), var(n, 1), Poly(n)});
    CHECK(conformal_killing_residual(rot, 1).is_zero());

    PolyField not_ck = make_poly_vector(n, {var(n, 1) * var(n, 1), Poly(n), Poly(n)});
    CHECK(!conformal_killing_residual(not_ck, 1).is_zero());
}

TEST_CASE("valence-2 residual against hand-expanded values") {
    const int n = 3;
    // V = x1^2 * (trace-free part of e1 (x) e1) = x1^2 diag(2/3, -1/3, -1/3)
    PolyField v2(n, {Variance::Up, Variance::Up}, SymTag::SymmetricTraceFree, Rational(0), Poly(n));
    Poly x1sq = var(n, 1) * var(n, 1);
    v2.at({0, 0}) = Rational(2, 3) * x1sq;
    v2.at({1, 1}) = Rational(-1, 3) * x1sq;
    v2.at({2, 2}) = Rational(-1, 3) * x1sq;
    PolyField res = conformal_killing_residual(v2, 2);
    CHECK(!res.is_zero());
    CHECK(res.at({0, 0, 0}) == Rational(12, 5) * var(n, 1));
    CHECK(res.at({0, 1, 1}) == Rational(-6, 5) * var(n, 1));
    CHECK(res.at({1, 0, 1}) == Rational(-6, 5) * var(n, 1));
    CHECK(res.at({0, 2, 2}) == Rational(-6, 5) * var(n, 1));
    CHECK(res.at({0, 0, 1}).is_zero());
    CHECK(res.at({0, 1, 2}).is_zero());
    CHECK(res.at({1, 1, 1}).is_zero());
    // the equation's two sides have equal traces, so the residual is trace-free
    Poly tr(n);
    for (int b = 0; b < n; ++b) tr += res.at({0, b, b});
    CHECK(tr.is_zero());
}

TEST_CASE("residual rejects wrong symmetry tags") {
    const int n = 3;
    PolyField plain(n, {Variance::Up, Variance::Up}, SymTag::Symmetric, Rational(0), Poly(n));
    CHECK_THROWS_AS(conformal_killing_residual(plain, 2), std::invalid_argument);
    PolyField vec = make_poly_vector(n, {var(n, 1), Poly(n), Poly(n)});
    CHECK_THROWS_AS(conformal_killing_residual(vec, 2), std::invalid_argument);
}

TEST_CASE("random parameter fields always solve the equation, linearly") {
    Rng rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 3 + static_cast<int>(rng.next() % 2);
        CKParams p = random_params(rng, n);
        CKParams q = random_params(rng, n);
        PolyField vp = ckv_from_parameters(n, p);
        CHECK(conformal_killing_residual(vp, 1).is_zero());

        // linearity: V(p) + V(q) agrees with V built from summed parameters
        CKParams sum = CKParams::zero(n);
        for (int i = 0; i < n; ++i) {
            sum.s[static_cast<size_t>(i)] = p.s[static_cast<size_t>(i)] + q.s[static_cast<size_t>(i)];
            sum.r[static_cast<size_t>(i)] = p.r[static_cast<size_t>(i)] + q.r[static_cast<size_t>(i)];
            for (int j = 0; j < n; ++j)
                sum.m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    p.m[static_cast<size_t>(i)][static_cast<size_t>(j)] + q.m[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        sum.lambda = p.lambda + q.lambda;
        PolyField vsum = ckv_from_parameters(n, sum);
        CHECK((vp + ckv_from_parameters(n, q)) - vsum == PolyField(n, {Variance::Up}, SymTag::None, Rational(0), Poly(n)));
    }
}

TEST_CASE("solver dimensions at n=3") {
    auto b1 = solve_conformal_killing(3, 1, 2);
    CHECK(b1.size() == 10);
    CHECK(expected_dimension(3, 1) == 10);
    for (const auto& v : b1) CHECK(conformal_killing_residual(v, 1).is_zero());

    auto b2 = solve_conformal_killing(3, 2, 4);
    CHECK(b2.size() == 35);
    CHECK(expected_dimension(3, 2) == 35);
    for (const auto& v : b2) CHECK(conformal_killing_residual(v, 2).is_zero());
}

TEST_CASE("degree saturation: blocks above the generating degree are empty") {
    CHECK(homogeneous_block_empty(3, 1, 3));
    CHECK(homogeneous_block_empty(3, 2, 5));
    CHECK(solve_conformal_killing(3, 1, 3).size() == 10);
}

TEST_CASE("solver dimension at n=4 valence 2") {
    auto b2 = solve_conformal_killing(4, 2, 4);
    CHECK(b2.size() == 84);
    CHECK(expected_dimension(4, 2) == 84);
    for (const auto& v : b2) CHECK(conformal_killing_residual(v, 2).is_zero());
}

TEST_CASE("expected dimension formula values") {
    CHECK(expected_dimension(3, 1) == 10);
    CHECK(expected_dimension(3, 2) == 35);
    CHECK(expected_dimension(4, 2) == 84);
    CHECK(expected_dimension(5, 2) == 168);
    CHECK_THROWS_AS(expected_dimension(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(expected_dimension(3, 3), std::invalid_argument);
}

TEST_CASE("symmetric product of solver fields is a conformal Killing tensor") {
    auto basis = solve_conformal_killing(3, 1, 2);
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        const PolyField& v = basis[rng.next() % basis.size()];
        const PolyField& w = basis[rng.next() % basis.size()];
        VectorAlgebra alg = algebra_ops(v, w);
        CHECK(conformal_killing_residual(alg.sym_product, 2).is_zero());
    }
}

TEST_CASE("tensor symmetry helpers") {
    const int n = 3;
    PolyField t(n, {Variance::Up, Variance::Up}, SymTag::None, Rational(0), Poly(n));
    t.at({0, 1}) = var(n, 1);
    PolyField s = symmetrized(t);
    CHECK(s.at({0, 1}) == Rational(1, 2) * var(n, 1));
    CHECK(s.at({1, 0}) == Rational(1, 2) * var(n, 1));

    PolyField stf(n, {Variance::Up, Variance::Up}, SymTag::SymmetricTraceFree, Rational(0), Poly(n));
    stf.at({0, 0}) = Rational(2, 3) * var(n, 2);
    stf.at({1, 1}) = Rational(-1, 3) * var(n, 2);
    stf.at({2, 2}) = Rational(-1, 3) * var(n, 2);
    CHECK(flat_tag_consistent(stf));
    CHECK(euclidean_trace(stf, 0, 1).is_zero());

    stf.at({2, 2}) = Poly(n);  // break the trace
    CHECK(!flat_tag_consistent(stf));

    PolyField skew(n, {Variance::Down, Variance::Down}, SymTag::Skew, Rational(0), Poly(n));
    skew.at({0, 1}) = var(n, 3);
    skew.at({1, 0}) = -var(n, 3);
    CHECK(flat_tag_consistent(skew));
    skew.at({1, 0}) = var(n, 3);
    CHECK(!flat_tag_consistent(skew));
}
