// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_CKT_HPP
#define CONFSYM_CKT_HPP

#include <vector>

#include "confsym/matrix.hpp"
#include "confsym/tensor.hpp"

namespace confsym {

/// Parameters of a conformal Killing field on flat R^n: translations s,
/// rotations m (skew), dilation lambda, special conformal part r.
struct CKParams {
    std::vector<Rational> s;
    std::vector<std::vector<Rational>> m;
    Rational lambda;
    std::vector<Rational> r;

    static CKParams zero(int n);
};

/// V^a = -s^a - m^a_b x^b + lambda x^a + (r.x) x^a - 1/2 (x.x) r^a.
PolyField ckv_from_parameters(int n, const CKParams& p);

/// Left side minus right side of the conformal Killing equation, as an exact
/// symmetric tensor field: valence 1 gives
///   d_a V_b + d_b V_a - (2/n) delta_ab (div V),
/// valence 2 gives the cyclic three-index version with the (2/(n+2)) trace
/// terms. Zero exactly when the input is a conformal Killing field/tensor.
PolyField conformal_killing_residual(const PolyField& v, int valence);

/// Basis of polynomial solutions of degree <= max_degree, assembled from the
/// residual's coefficient system per homogeneous degree and solved with
/// exact_nullspace. Deterministic ordering: degree, then kernel vector order.
std::vector<PolyField> solve_conformal_killing(int n, int valence, int max_degree);

/// Solutions that are homogeneous of the given degree.
std::vector<PolyField> solve_conformal_killing_homogeneous(int n, int valence, int degree);

/// True when the homogeneous block of this degree has no nonzero solutions.
/// Certified by the mod-p rank bound when it proves emptiness; otherwise the
/// exact elimination decides.
bool homogeneous_block_empty(int n, int valence, int degree);

/// (n+1)(n+2)/2 for valence 1, (n-1)(n+2)(n+3)(n+4)/12 for valence 2; n >= 3.
long expected_dimension(int n, int valence);

}  // namespace confsym

#endif
