// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_PAIRINGS_HPP
#define CONFSYM_PAIRINGS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "confsym/geometry.hpp"

namespace confsym {

/// Y f = Lap f - (n-2)/(4(n-1)) R f, mapping weight 1-n/2 to weight -1-n/2.
JetField yamabe_apply(const GeometryCache& c, const JetField& f);

/// (v+n) V^a nabla_a f - w (nabla_a V^a) f; output weight v+w.
JetField pairing_first(const GeometryCache& c, const JetField& v, const JetField& f);

/// (n+v+2)(n+v+1) V^ab nabla_a nabla_b f - 2(w-1)(n+v+1)(nabla_a V^ab) nabla_b f
///   + w(w-1)(nabla_a nabla_b V^ab) f + w(n+v+w)(n+v+2) Phi_ab V^ab f.
JetField pairing_second(const GeometryCache& c, const JetField& v2, const JetField& f);

/// (n+v+2) V^ab nabla_a phi_b - (w-2)(nabla_a V^ab) phi_b, fully contracted.
JetField pairing_oneform(const GeometryCache& c, const JetField& v2, const JetField& phi);

enum class SpecialOp {
    Gradient,        // scalar of weight 0     -> nabla_a f
    Divergence,      // vector of weight -n    -> nabla_a V^a
    HessianTrFree,   // scalar of weight 1     -> nabla_a nabla_b f - (Lap f) g_ab / n + Phi_ab f
    DoubleDivPhi,    // valence 2, weight -n-1 -> nabla_a nabla_b V^ab + Phi_ab V^ab
    DivergenceV2,    // valence 2, weight -n-2 -> nabla_b V^ab
};

JetField special_weight_operator(const GeometryCache& c, SpecialOp op, const JetField& input);
Rational special_op_input_weight(SpecialOp op, int n);
Rational special_op_output_weight(SpecialOp op, int n);

/// The flat Killing-form pairing of two weight-0 vector fields plus its
/// curvature correction terms; scalar output.
JetField inner_product_curved(const GeometryCache& c, const JetField& v, const JetField& w);

/// Curved second-order operators built from a trace-free symmetric V^ab and
/// a weight 1-n/2 density.
JetField curved_second_symmetry(const GeometryCache& c, const JetField& v2, const JetField& f);
JetField curved_second_delta(const GeometryCache& c, const JetField& v2, const JetField& f);

/// Composite of power-rescaled invariant operators minus pairing_second;
/// requires w != 0 and f(base) = 1.
JetField factorization_identity_residual(const GeometryCache& c, const JetField& v2, const JetField& f);

enum class PairingId {
    First,
    Second,
    OneForm,
    Yamabe,
    SpecialGradient,
    SpecialDivergence,
    SpecialHessianTrFree,
    SpecialDoubleDivPhi,
    SpecialDivergenceV2,
    InnerCurved,
};

std::string pairing_name(PairingId id);

/// Evaluates the pairing in the given geometry. Inputs are positional:
/// binary pairings take {V, f}; unary ones take {input}.
JetField evaluate_pairing(PairingId id, const GeometryCache& c, const std::vector<JetField>& inputs);

struct InvarianceReport {
    std::string pairing;
    std::vector<Rational> input_weights;
    Rational output_weight;
    int compare_order = 0;        // jet order to which the residual was checked
    bool residual_zero = false;   // P_ghat(transformed) - Omega^lambda P_g(inputs) vanished
    bool weight_audit_ok = false; // constant-rescaling check of the output weight
    std::uint64_t seed = 0;
    std::string note;

    bool verified() const { return residual_zero && weight_audit_ok; }
};

/// Conformal invariance check of a pairing: evaluates in g and in
/// Omega^2 g with transformed inputs and forms the residual against
/// Omega^lambda times the original output. A separate constant-rescaling run
/// (exact rational factors, no jets) audits the claimed output weight.
InvarianceReport invariance_check(PairingId id, const GeometryCache& cg, const GeometryCache& cghat,
                                  const ConformalFactor& cf, const std::vector<JetField>& inputs,
                                  const Rational& lambda, std::uint64_t seed);
InvarianceReport invariance_check(PairingId id, const MetricJet& g, const Jet& omega,
                                  const std::vector<JetField>& inputs, const Rational& lambda, std::uint64_t seed);

/// Output weights with a zero invariance residual, scanned over a grid of
/// half-integers; used where the output weight is not known a priori.
std::vector<Rational> infer_output_weight(PairingId id, const GeometryCache& cg, const GeometryCache& cghat,
                                          const ConformalFactor& cf, const std::vector<JetField>& inputs,
                                          const std::vector<Rational>& grid);

/// Residual of the curved conformal Killing tensor equation for an
/// upper-index valence-2 field, as a covariant valence-3 field.
JetField ckt_residual_curved(const GeometryCache& c, const JetField& v2);

struct ExperimentEntry {
    std::string label;
    Rational transport_weight;
    bool flat_background = false;
    int compare_order = 0;
    bool yamabe_residual_zero = false;
    bool ckt_residual_zero = false;
};

struct ExperimentReport {
    int n = 0;
    int order = 0;
    std::uint64_t seed = 0;
    std::vector<ExperimentEntry> entries;
};

/// Probes whether the curved second-order operators intertwine the Yamabe
/// operator when V^ab is transported from a flat conformal Killing tensor to
/// a conformally rescaled background. Flat-background entries must come out
/// zero; curved entries are reported as-is, swept over transport weights.
ExperimentReport yamabe_ckt_experiment(int n, int order, std::uint64_t seed);

}  // namespace confsym

#endif
