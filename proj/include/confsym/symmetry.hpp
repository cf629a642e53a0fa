// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_SYMMETRY_HPP
#define CONFSYM_SYMMETRY_HPP

#include <optional>
#include <vector>

#include "confsym/diff_op.hpp"
#include "confsym/tensor.hpp"

namespace confsym {

/// Result of an intertwining check L D = delta L. The residual is stored as
/// computed; verified is just is_zero(residual).
struct SymmetryPair {
    DiffOp d;
    DiffOp delta;
    DiffOp residual;
    bool verified = false;
};

/// f -> V^a d_a f - (w/n)(d_a V^a) f for a valence-1 field V.
DiffOp build_first_order(const PolyField& v, const Rational& w);

/// f -> V^ab d_a d_b f + n/(n+2) (d_a V^ab) d_b f
///        + (n-2)n/(4(n+1)(n+2)) (d_a d_b V^ab) f
/// for a symmetric trace-free valence-2 field.
DiffOp build_second_order(const PolyField& v2);

/// The right-hand operators of the intertwining relations on flat space:
/// order 1: V^a d_a + (n+2)/(2n) (d_a V^a);
/// order 2: V^ab d_a d_b + (n+4)/(n+2) (d_a V^ab) d_b + (n+4)/(4(n+1)) (d_a d_b V^ab).
DiffOp build_delta(int order, const PolyField& v);

SymmetryPair check_intertwine(const DiffOp& l, const DiffOp& d, const DiffOp& delta);

/// Solves delta L = L D for delta by a bounded ansatz (operator order and
/// polynomial coefficient degree) over the exact linear solver. Returns
/// nullopt when no such delta exists within the bounds. Free coefficients,
/// if any, are pinned to zero, which makes the result canonical.
std::optional<DiffOp> find_delta(const DiffOp& l, const DiffOp& d, int max_order, int max_degree);

struct VectorAlgebra {
    PolyField sym_product;  // (V . W)^ab = 1/2 V^a W^b + 1/2 V^b W^a - (1/n) delta^ab V.W
    PolyField bracket;      // [V,W]^a = V^b d_b W^a - W^b d_b V^a
    Poly inner;             // the Killing-form style scalar pairing
};

VectorAlgebra algebra_ops(const PolyField& v, const PolyField& w);

/// D_V D_W - D_{V.W} - 1/2 D_[V,W] + (n-2)/(4n(n+1)) <V,W> - (1/n)(V.W) Lap,
/// in normal form; zero whenever V and W are conformal Killing fields.
DiffOp composition_identity_residual(const PolyField& v, const PolyField& w);

/// [D_V, D_W] - D_[V,W] at weight w (default 1 - n/2).
DiffOp bracket_identity_residual(const PolyField& v, const PolyField& w, const Rational& weight);
DiffOp bracket_identity_residual(const PolyField& v, const PolyField& w);

/// Lie derivative of a covariant tensor along V, computed with the flat
/// derivative shifted by an optional symmetric connection-difference tensor
/// Gamma_ab^c (shape down,down,up). The result does not depend on Gamma.
PolyField lie_derivative(const PolyField& v, const PolyField& phi, const PolyField* gamma = nullptr);

/// The eleven classical generators of first order Laplacian symmetries on R^3.
std::vector<DiffOp> laplacian_symmetries_r3();

}  // namespace confsym

#endif
