// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/pairings.hpp"

#include "confsym/ckt.hpp"
#include "confsym/randomgen.hpp"
#include "confsym/symmetry.hpp"

namespace confsym {

namespace {

JetField scalar_field(const GeometryCache& c, const Jet& j, const Rational& w) {
    JetField f(c.dim(), {}, SymTag::None, w, j);
    return f;
}

// nabla_a nabla_b f as a (down,down) field
JetField hessian(const GeometryCache& c, const JetField& f) {
    return cov_deriv(c, cov_deriv(c, f));
}

Jet laplacian_scalar(const GeometryCache& c, const JetField& f) {
    return metric_trace(c, hessian(c, f), 0, 1).scalar();
}

// nabla_a V^a
Jet div_vector(const GeometryCache& c, const JetField& v) {
    return contract(cov_deriv(c, v), 0, 1).scalar();
}

// (div V2)^b = nabla_a V^ab
JetField div_v2(const GeometryCache& c, const JetField& v2) {
    return contract(cov_deriv(c, v2), 0, 1);
}

Jet phi_contract(const GeometryCache& c, const JetField& v2) {
    const int n = c.dim();
    Jet acc(n, c.metric.order >= 2 ? c.metric.order - 2 : 0, c.metric.base);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) acc = acc + c.phi_at(a, b) * v2.at({a, b});
    return acc;
}

void require_shape(const JetField& t, int rank, const char* what) {
    if (t.rank() != rank) throw std::invalid_argument(std::string(what) + ": wrong valence");
}

void require_weight(const JetField& t, const Rational& w, const char* what) {
    if (t.weight() != w) throw std::invalid_argument(std::string(what) + ": wrong conformal weight");
}

}  // namespace

JetField yamabe_apply(const GeometryCache& c, const JetField& f) {
    const int n = c.dim();
    require_shape(f, 0, "yamabe_apply");
    require_weight(f, Rational(1) - Rational(n, 2), "yamabe_apply");
    Jet out = laplacian_scalar(c, f) - Rational(n - 2, 4L * (n - 1)) * (c.scalar * f.scalar());
    return scalar_field(c, out, Rational(-1) - Rational(n, 2));
}

JetField pairing_first(const GeometryCache& c, const JetField& v, const JetField& f) {
    const int n = c.dim();
    require_shape(v, 1, "pairing_first");
    require_shape(f, 0, "pairing_first");
    const Rational& vw = v.weight();
    const Rational& fw = f.weight();
    Jet acc(n, c.metric.order, c.metric.base);
    for (int a = 0; a < n; ++a) acc = acc + v.at({a}) * f.scalar().diff(a + 1);
    Jet out = (vw + Rational(n)) * acc - fw * (div_vector(c, v) * f.scalar());
    return scalar_field(c, out, vw + fw);
}

JetField pairing_second(const GeometryCache& c, const JetField& v2, const JetField& f) {
    const int n = c.dim();
    require_shape(v2, 2, "pairing_second");
    require_shape(f, 0, "pairing_second");
    if (v2.sym() != SymTag::SymmetricTraceFree)
        throw std::invalid_argument("pairing_second: V must be symmetric trace-free");
    const Rational& v = v2.weight();
    const Rational& w = f.weight();
    const Rational nv1 = Rational(n) + v + Rational(1);
    const Rational nv2 = Rational(n) + v + Rational(2);

    JetField hess = hessian(c, f);
    Jet t1(n, c.metric.order, c.metric.base);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t1 = t1 + v2.at({a, b}) * hess.at({a, b});

    JetField dv = div_v2(c, v2);
    Jet t2(n, c.metric.order, c.metric.base);
    for (int b = 0; b < n; ++b) t2 = t2 + dv.at({b}) * f.scalar().diff(b + 1);

    Jet ddv = contract(cov_deriv(c, dv), 0, 1).scalar();

    Jet out = nv2 * nv1 * t1 - Rational(2) * (w - Rational(1)) * nv1 * t2 + w * (w - Rational(1)) * (ddv * f.scalar()) +
              w * (Rational(n) + v + w) * nv2 * (phi_contract(c, v2) * f.scalar());
    return scalar_field(c, out, v + w);
}

JetField pairing_oneform(const GeometryCache& c, const JetField& v2, const JetField& phi) {
    const int n = c.dim();
    require_shape(v2, 2, "pairing_oneform");
    require_shape(phi, 1, "pairing_oneform");
    if (v2.sym() != SymTag::SymmetricTraceFree)
        throw std::invalid_argument("pairing_oneform: V must be symmetric trace-free");
    if (phi.shape()[0] != Variance::Down) throw std::invalid_argument("pairing_oneform: phi must be a 1-form");
    const Rational& v = v2.weight();
    const Rational& w = phi.weight();
    JetField dphi = cov_deriv(c, phi);  // [a][b] = nabla_a phi_b
    Jet t1(n, c.metric.order, c.metric.base);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t1 = t1 + v2.at({a, b}) * dphi.at({a, b});
    JetField dv = div_v2(c, v2);
    Jet t2(n, c.metric.order, c.metric.base);
    for (int b = 0; b < n; ++b) t2 = t2 + dv.at({b}) * phi.at({b});
    Jet out = (Rational(n) + v + Rational(2)) * t1 - (w - Rational(2)) * t2;
    return scalar_field(c, out, v + w);
}

Rational special_op_input_weight(SpecialOp op, int n) {
    switch (op) {
        case SpecialOp::Gradient: return Rational(0);
        case SpecialOp::Divergence: return Rational(-n);
        case SpecialOp::HessianTrFree: return Rational(1);
        case SpecialOp::DoubleDivPhi: return Rational(-n - 1);
        case SpecialOp::DivergenceV2: return Rational(-n - 2);
    }
    throw std::logic_error("special_op_input_weight");
}

Rational special_op_output_weight(SpecialOp op, int n) {
    return special_op_input_weight(op, n);  // the component scaling is untouched by nabla
}

JetField special_weight_operator(const GeometryCache& c, SpecialOp op, const JetField& input) {
    const int n = c.dim();
    require_weight(input, special_op_input_weight(op, n), "special_weight_operator");
    switch (op) {
        case SpecialOp::Gradient: {
            require_shape(input, 0, "special_weight_operator(gradient)");
            JetField out = cov_deriv(c, input);
            out.set_weight(special_op_output_weight(op, n));
            return out;
        }
        case SpecialOp::Divergence: {
            require_shape(input, 1, "special_weight_operator(divergence)");
            return scalar_field(c, div_vector(c, input), special_op_output_weight(op, n));
        }
        case SpecialOp::HessianTrFree: {
            require_shape(input, 0, "special_weight_operator(hessian)");
            JetField out = hessian(c, input);
            Jet lap = laplacian_scalar(c, input);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    out.at({a, b}) = out.at({a, b}) - Rational(1, n) * (lap * c.metric.at(a, b)) +
                                     c.phi_at(a, b) * input.scalar();
            out.set_weight(special_op_output_weight(op, n));
            return out;
        }
        case SpecialOp::DoubleDivPhi: {
            require_shape(input, 2, "special_weight_operator(double divergence)");
            Jet ddv = contract(cov_deriv(c, div_v2(c, input)), 0, 1).scalar();
            return scalar_field(c, ddv + phi_contract(c, input), special_op_output_weight(op, n));
        }
        case SpecialOp::DivergenceV2: {
            require_shape(input, 2, "special_weight_operator(divergence of V2)");
            JetField out = div_v2(c, input);
            out.set_weight(special_op_output_weight(op, n));
            return out;
        }
    }
    throw std::logic_error("special_weight_operator");
}

JetField inner_product_curved(const GeometryCache& c, const JetField& v, const JetField& w) {
    const int n = c.dim();
    if (n < 3) throw std::invalid_argument("inner_product_curved: requires n >= 3");
    require_shape(v, 1, "inner_product_curved");
    require_shape(w, 1, "inner_product_curved");
    require_weight(v, Rational(0), "inner_product_curved");
    require_weight(w, Rational(0), "inner_product_curved");

    JetField dv = cov_deriv(c, v);  // [b][a] = nabla_b V^a
    JetField dw = cov_deriv(c, w);

    Jet t1(n, c.metric.order, c.metric.base);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t1 = t1 + dv.at({b, a}) * dw.at({a, b});

    Jet divv = div_vector(c, v), divw = div_vector(c, w);
    Jet t3(n, c.metric.order, c.metric.base), t4(n, c.metric.order, c.metric.base);
    for (int a = 0; a < n; ++a) {
        t3 = t3 + v.at({a}) * divw.diff(a + 1);
        t4 = t4 + w.at({a}) * divv.diff(a + 1);
    }

    Jet vw(n, c.metric.order, c.metric.base);  // V_a W^a
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) vw = vw + c.metric.at(a, b) * (v.at({a}) * w.at({b}));
    Jet t5 = laplacian_scalar(c, scalar_field(c, vw, Rational(0)));

    Jet ricvw(n, c.metric.order, c.metric.base);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) ricvw = ricvw + c.ric(a, b) * (v.at({a}) * w.at({b}));

    const Rational k(n + 2, n);
    Jet out = Rational(n + 2) * t1 - k * (divv * divw) - k * t3 - k * t4 + t5;
    out = out - Rational(2L * (n + 2), n - 2) * ricvw;
    out = out + Rational(2L * n, static_cast<long>(n - 1) * (n - 2)) * (c.scalar * vw);
    return scalar_field(c, out, Rational(0));
}

namespace {

JetField curved_second_common(const GeometryCache& c, const JetField& v2, const JetField& f, const Rational& c1,
                              const Rational& c0, const Rational& expected_weight) {
    const int n = c.dim();
    require_shape(v2, 2, "curved second-order operator");
    require_shape(f, 0, "curved second-order operator");
    require_weight(f, expected_weight, "curved second-order operator");

    JetField hess = hessian(c, f);
    Jet t1(n, c.metric.order, c.metric.base);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t1 = t1 + v2.at({a, b}) * hess.at({a, b});
    JetField dv = div_v2(c, v2);
    Jet t2(n, c.metric.order, c.metric.base);
    for (int b = 0; b < n; ++b) t2 = t2 + dv.at({b}) * f.scalar().diff(b + 1);
    Jet ddv = contract(cov_deriv(c, dv), 0, 1).scalar();

    Jet ricv(n, c.metric.order, c.metric.base);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) ricv = ricv + c.ric(a, b) * v2.at({a, b});

    Jet out = t1 + c1 * t2 + c0 * (ddv * f.scalar()) - Rational(n + 2, 4L * (n + 1)) * (ricv * f.scalar());
    return scalar_field(c, out, f.weight());
}

}  // namespace

JetField curved_second_symmetry(const GeometryCache& c, const JetField& v2, const JetField& f) {
    const int n = c.dim();
    return curved_second_common(c, v2, f, Rational(n, n + 2),
                                Rational(static_cast<long>(n - 2) * n) / Rational(4L * (n + 1) * (n + 2)),
                                Rational(1) - Rational(n, 2));
}

JetField curved_second_delta(const GeometryCache& c, const JetField& v2, const JetField& f) {
    const int n = c.dim();
    return curved_second_common(c, v2, f, Rational(n + 4, n + 2), Rational(n + 4, 4L * (n + 1)),
                                Rational(-1) - Rational(n, 2));
}

JetField factorization_identity_residual(const GeometryCache& c, const JetField& v2, const JetField& f) {
    const int n = c.dim();
    require_shape(v2, 2, "factorization_identity_residual");
    require_shape(f, 0, "factorization_identity_residual");
    const Rational v = v2.weight();
    const Rational w = f.weight();
    if (w.is_zero()) throw std::invalid_argument("factorization_identity_residual: w must be nonzero");
    if (f.scalar().value_at_base() != Rational(1))
        throw std::invalid_argument("factorization_identity_residual: f(base) must be 1");

    const Rational nv1 = Rational(n) + v + Rational(1);
    const Rational nv2 = Rational(n) + v + Rational(2);
    auto fpow = [&](const Rational& e) { return f.scalar().pow_rational(e); };
    auto scale_v2 = [&](const Rational& e) {
        JetField out = v2;
        Jet factor = fpow(e);
        for (auto& comp : out.components()) comp = factor * comp;
        return out;
    };

    // nabla_a nabla_b (f^{-(n+v+1)/w} V^ab) + Phi_ab f^{-(n+v+1)/w} V^ab
    JetField a_field = scale_v2(-nv1 / w);
    Jet term_d = contract(cov_deriv(c, div_v2(c, a_field)), 0, 1).scalar() + phi_contract(c, a_field);

    // nabla_a ( f^{2/w} nabla_b (f^{-(n+v+2)/w} V^ab) )
    JetField b_field = scale_v2(-nv2 / w);
    JetField vec_e = div_v2(c, b_field);
    Jet f2w = fpow(Rational(2) / w);
    for (auto& comp : vec_e.components()) comp = f2w * comp;
    Jet term_e = div_vector(c, vec_e);

    Jet composite = w * nv2 * (Rational(n) + v + w) * (fpow((nv1 + w) / w) * term_d) -
                    w * nv1 * (nv1 + w) * (fpow((Rational(n) + v + w) / w) * term_e);
    Jet residual = composite - pairing_second(c, v2, f).scalar();
    return scalar_field(c, residual, v + w);
}

std::string pairing_name(PairingId id) {
    switch (id) {
        case PairingId::First: return "pairing-first";
        case PairingId::Second: return "pairing-second";
        case PairingId::OneForm: return "pairing-oneform";
        case PairingId::Yamabe: return "yamabe";
        case PairingId::SpecialGradient: return "special-gradient";
        case PairingId::SpecialDivergence: return "special-divergence";
        case PairingId::SpecialHessianTrFree: return "special-hessian-tracefree";
        case PairingId::SpecialDoubleDivPhi: return "special-double-divergence";
        case PairingId::SpecialDivergenceV2: return "special-divergence-v2";
        case PairingId::InnerCurved: return "inner-curved";
    }
    return "unknown";
}

JetField evaluate_pairing(PairingId id, const GeometryCache& c, const std::vector<JetField>& inputs) {
    switch (id) {
        case PairingId::First: return pairing_first(c, inputs.at(0), inputs.at(1));
        case PairingId::Second: return pairing_second(c, inputs.at(0), inputs.at(1));
        case PairingId::OneForm: return pairing_oneform(c, inputs.at(0), inputs.at(1));
        case PairingId::Yamabe: return yamabe_apply(c, inputs.at(0));
        case PairingId::SpecialGradient: return special_weight_operator(c, SpecialOp::Gradient, inputs.at(0));
        case PairingId::SpecialDivergence: return special_weight_operator(c, SpecialOp::Divergence, inputs.at(0));
        case PairingId::SpecialHessianTrFree: return special_weight_operator(c, SpecialOp::HessianTrFree, inputs.at(0));
        case PairingId::SpecialDoubleDivPhi: return special_weight_operator(c, SpecialOp::DoubleDivPhi, inputs.at(0));
        case PairingId::SpecialDivergenceV2: return special_weight_operator(c, SpecialOp::DivergenceV2, inputs.at(0));
        case PairingId::InnerCurved: return inner_product_curved(c, inputs.at(0), inputs.at(1));
    }
    throw std::logic_error("evaluate_pairing");
}

InvarianceReport invariance_check(PairingId id, const GeometryCache& cg, const GeometryCache& cghat,
                                  const ConformalFactor& cf, const std::vector<JetField>& inputs,
                                  const Rational& lambda, std::uint64_t seed) {
    InvarianceReport rep;
    rep.pairing = pairing_name(id);
    for (const auto& in : inputs) rep.input_weights.push_back(in.weight());
    rep.output_weight = lambda;
    rep.seed = seed;

    JetField out = evaluate_pairing(id, cg, inputs);
    std::vector<JetField> transformed;
    transformed.reserve(inputs.size());
    for (const auto& in : inputs) transformed.push_back(transform_field(in, cf.omega));
    JetField out_hat = evaluate_pairing(id, cghat, transformed);

    Jet omega_lambda = cf.omega.pow_rational(lambda);
    bool zero = true;
    int order = out_hat.components().front().order();
    for (size_t i = 0; i < out.components().size(); ++i) {
        Jet residual = out_hat.components()[i] - omega_lambda * out.components()[i];
        order = std::min(order, residual.order());
        if (!residual.is_zero()) zero = false;
    }
    rep.residual_zero = zero;
    rep.compare_order = order;

    // constant-rescaling audit: Omega = s^2 with s = 2, all factors rational
    const Rational s(2);
    GeometryCache cconst = geometry_cache(rescale_const(cg.metric, s));
    std::vector<JetField> const_scaled;
    const_scaled.reserve(inputs.size());
    bool audit_possible = true;
    Rational two_lambda = Rational(2) * lambda;
    if (!two_lambda.is_integer()) audit_possible = false;
    for (const auto& in : inputs) {
        if (!(Rational(2) * in.weight()).is_integer()) {
            audit_possible = false;
            break;
        }
        const_scaled.push_back(transform_field_const(in, s, in.weight()));
    }
    if (audit_possible) {
        JetField out_const = evaluate_pairing(id, cconst, const_scaled);
        Rational factor = s.pow_int(two_lambda.num_as_long());
        bool audit = true;
        for (size_t i = 0; i < out.components().size(); ++i) {
            Jet residual = out_const.components()[i] - factor * out.components()[i];
            if (!residual.is_zero()) audit = false;
        }
        rep.weight_audit_ok = audit;
    } else {
        rep.weight_audit_ok = false;
        rep.note = "weight audit skipped: weights not half-integral";
    }
    return rep;
}

InvarianceReport invariance_check(PairingId id, const MetricJet& g, const Jet& omega,
                                  const std::vector<JetField>& inputs, const Rational& lambda, std::uint64_t seed) {
    GeometryCache cg = geometry_cache(g);
    GeometryCache cghat = geometry_cache(rescale(g, omega));
    return invariance_check(id, cg, cghat, make_conformal_factor(omega), inputs, lambda, seed);
}

std::vector<Rational> infer_output_weight(PairingId id, const GeometryCache& cg, const GeometryCache& cghat,
                                          const ConformalFactor& cf, const std::vector<JetField>& inputs,
                                          const std::vector<Rational>& grid) {
    JetField out = evaluate_pairing(id, cg, inputs);
    std::vector<JetField> transformed;
    transformed.reserve(inputs.size());
    for (const auto& in : inputs) transformed.push_back(transform_field(in, cf.omega));
    JetField out_hat = evaluate_pairing(id, cghat, transformed);
    std::vector<Rational> hits;
    for (const auto& lambda : grid) {
        Jet omega_lambda = cf.omega.pow_rational(lambda);
        bool zero = true;
        for (size_t i = 0; i < out.components().size(); ++i) {
            if (!(out_hat.components()[i] - omega_lambda * out.components()[i]).is_zero()) {
                zero = false;
                break;
            }
        }
        if (zero) hits.push_back(lambda);
    }
    return hits;
}

JetField ckt_residual_curved(const GeometryCache& c, const JetField& v2) {
    const int n = c.dim();
    require_shape(v2, 2, "ckt_residual_curved");
    JetField low = lower_index(c, lower_index(c, v2, 0), 1);
    JetField grad = cov_deriv(c, low);  // [a][b][c] = nabla_a V_bc
    // D_c = nabla^d V_cd
    JetField dlow = raise_index(c, grad, 0);  // [d up][b][c]
    std::vector<Jet> div(static_cast<size_t>(n), Jet(n, 0, c.metric.base));
    for (int cc = 0; cc < n; ++cc) {
        Jet acc(n, c.metric.order, c.metric.base);
        for (int d = 0; d < n; ++d) acc = acc + dlow.at({d, cc, d});
        div[static_cast<size_t>(cc)] = acc;
    }
    JetField res(n, {Variance::Down, Variance::Down, Variance::Down}, SymTag::Symmetric, Rational(0),
                 Jet(n, 0, c.metric.base));
    const Rational k(2, n + 2);
    res.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        int a = idx[0], b = idx[1], cc = idx[2];
        Jet r = grad.at({a, b, cc}) + grad.at({b, cc, a}) + grad.at({cc, a, b});
        r = r - k * (c.metric.at(a, b) * div[static_cast<size_t>(cc)] + c.metric.at(b, cc) * div[static_cast<size_t>(a)] +
                     c.metric.at(cc, a) * div[static_cast<size_t>(b)]);
        res.components()[flat] = r;
    });
    return res;
}

ExperimentReport yamabe_ckt_experiment(int n, int order, std::uint64_t seed) {
    ExperimentReport rep;
    rep.n = n;
    rep.order = order;
    rep.seed = seed;
    Rng rng(seed);
    const std::vector<Rational> base(static_cast<size_t>(n));
    const Rational fw = Rational(1) - Rational(n, 2);

    // sample conformal Killing tensors: two solver basis elements plus a
    // symmetric product of conformal Killing fields
    std::vector<std::pair<std::string, PolyField>> samples;
    auto basis = solve_conformal_killing(n, 2, 4);
    samples.emplace_back("basis[0]", basis.front());
    samples.emplace_back("basis[" + std::to_string(basis.size() / 2) + "]", basis[basis.size() / 2]);
    {
        CKParams pv = CKParams::zero(n), pw = CKParams::zero(n);
        pv.r[0] = Rational(1);  // special conformal generator
        pw.lambda = Rational(1);
        VectorAlgebra alg = algebra_ops(ckv_from_parameters(n, pv), ckv_from_parameters(n, pw));
        samples.emplace_back("sym-product", alg.sym_product);
    }

    MetricJet flat = flat_metric(n, order);
    GeometryCache cflat = geometry_cache(flat);
    Jet omega = random_conformal_factor(rng, n, order);
    GeometryCache ccurved = geometry_cache(rescale(flat, omega));

    const std::vector<Rational> weight_grid = {Rational(-2), Rational(-1), Rational(0), Rational(1), Rational(2)};

    for (const auto& [label, v2poly] : samples) {
        JetField v2(n, {Variance::Up, Variance::Up}, SymTag::SymmetricTraceFree, Rational(0), Jet(n, order, base));
        v2.for_each_index([&](const std::vector<int>& idx, size_t flat_idx) {
            v2.components()[flat_idx] = Jet::from_poly(v2poly.at(idx), base, order);
        });
        JetField f = random_scalar_density(rng, n, order, fw);

        auto run = [&](const GeometryCache& cache, const JetField& v2in, bool flat_bg, const Rational& tw) {
            JetField yf = yamabe_apply(cache, f);
            JetField dvf = curved_second_symmetry(cache, v2in, f);
            Jet lhs = yamabe_apply(cache, dvf).scalar();
            Jet rhs = curved_second_delta(cache, v2in, yf).scalar();
            Jet residual = lhs - rhs;
            ExperimentEntry e;
            e.label = label;
            e.transport_weight = tw;
            e.flat_background = flat_bg;
            e.compare_order = residual.order();
            e.yamabe_residual_zero = residual.is_zero();
            e.ckt_residual_zero = ckt_residual_curved(cache, v2in).is_zero();
            rep.entries.push_back(e);
        };

        run(cflat, v2, true, Rational(0));
        for (const auto& tw : weight_grid) {
            JetField transported = v2;
            transported.set_weight(tw);
            transported = transform_field(transported, omega);
            transported.set_weight(Rational(0));
            run(ccurved, transported, false, tw);
        }
    }
    return rep;
}

}  // namespace confsym
