// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_GEOMETRY_HPP
#define CONFSYM_GEOMETRY_HPP

#include <vector>

#include "confsym/tensor.hpp"

namespace confsym {

/// Metric given as jets of its components at a base point, with the inverse
/// metric cached. The matrix of values at the base point must be invertible.
struct MetricJet {
    int n = 0;
    int order = 0;
    std::vector<Rational> base;
    std::vector<Jet> g;     // n*n, symmetric
    std::vector<Jet> ginv;  // n*n

    const Jet& at(int a, int b) const { return g[static_cast<size_t>(a * n + b)]; }
    const Jet& inv(int a, int b) const { return ginv[static_cast<size_t>(a * n + b)]; }
};

MetricJet make_metric(int n, int order, const std::vector<Rational>& base, const std::vector<Jet>& entries);
MetricJet flat_metric(int n, int order);

/// Conformal factor Omega with Omega(base) = 1 and its logarithmic
/// derivative Upsilon_a = d_a Omega / Omega.
struct ConformalFactor {
    Jet omega;
    std::vector<Jet> upsilon;
};

ConformalFactor make_conformal_factor(const Jet& omega);

/// Levi-Civita data derived from a metric: Christoffels, the Riemann tensor
/// R_abcd (sign fixed so the round sphere has positive scalar curvature),
/// Ricci R_bd = g^ac R_abcd, the scalar curvature, and the trace-adjusted
/// Ricci tensor Phi_ab = (R_ab - R g_ab / n) / (n - 2).
struct GeometryCache {
    MetricJet metric;
    std::vector<Jet> christoffel;  // Gamma^c_ab at [(c*n+a)*n+b]
    std::vector<Jet> riemann;      // R_abcd at [((a*n+b)*n+c)*n+d]
    std::vector<Jet> ricci;        // [b*n+d]
    Jet scalar;
    std::vector<Jet> phi;  // [a*n+b]

    int dim() const { return metric.n; }
    const Jet& gamma(int c, int a, int b) const { return christoffel[static_cast<size_t>((c * dim() + a) * dim() + b)]; }
    const Jet& riem(int a, int b, int c, int d) const {
        return riemann[static_cast<size_t>(((a * dim() + b) * dim() + c) * dim() + d)];
    }
    const Jet& ric(int b, int d) const { return ricci[static_cast<size_t>(b * dim() + d)]; }
    const Jet& phi_at(int a, int b) const { return phi[static_cast<size_t>(a * dim() + b)]; }
};

GeometryCache geometry_cache(const MetricJet& m);

/// ghat_ab = Omega^2 g_ab.
MetricJet rescale(const MetricJet& m, const Jet& omega);

/// Component scaling T-hat = Omega^w T; the index structure is untouched.
JetField transform_field(const JetField& t, const Jet& omega);

/// Scaling by a constant factor c^w where c = s^2; exact for half-integer w.
JetField transform_field_const(const JetField& t, const Rational& s, const Rational& w);
MetricJet rescale_const(const MetricJet& m, const Rational& s);

/// Adds one covariant slot in front: (cov_deriv T)[a, idx] = nabla_a T[idx].
/// Density weight is untouched; each component loses one jet order.
JetField cov_deriv(const GeometryCache& c, const JetField& t);

JetField lower_index(const GeometryCache& c, const JetField& t, int slot);
JetField raise_index(const GeometryCache& c, const JetField& t, int slot);

/// Plain trace over one Up and one Down slot.
JetField contract(const JetField& t, int slot_a, int slot_b);

/// g-trace over two slots of equal variance.
JetField metric_trace(const GeometryCache& c, const JetField& t, int slot_a, int slot_b);

/// nabla-hat applied to Omega^w T, minus Omega^w (nabla T + w Upsilon T +
/// Gamma-action), with Gamma_ab^c = Ups_a delta_b^c + Ups_b delta_a^c - g_ab Ups^c.
/// Zero to valid order for every weighted tensor.
JetField connection_change_residual(const GeometryCache& cg, const GeometryCache& cghat,
                                    const ConformalFactor& cf, const JetField& t);
JetField connection_change_residual(const JetField& t, const MetricJet& g, const Jet& omega);

struct CurvatureTransformResiduals {
    JetField riemann_residual;
    Jet scalar_residual;
};

/// Residuals of the conformal transformation laws for the Riemann tensor and
/// the scalar curvature.
CurvatureTransformResiduals curvature_transform_residual(const GeometryCache& cg, const GeometryCache& cghat,
                                                         const ConformalFactor& cf);
CurvatureTransformResiduals curvature_transform_residual(const MetricJet& g, const Jet& omega);

}  // namespace confsym

#endif
