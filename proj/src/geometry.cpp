// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/geometry.hpp"

namespace confsym {

namespace {

// exact inverse of a rational matrix by Gauss-Jordan
std::vector<std::vector<Rational>> invert_rational(std::vector<std::vector<Rational>> a) {
    const size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("metric singular at base point");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace

MetricJet make_metric(int n, int order, const std::vector<Rational>& base, const std::vector<Jet>& entries) {
    if (static_cast<int>(entries.size()) != n * n) throw std::invalid_argument("make_metric: n*n entries required");
    MetricJet m;
    m.n = n;
    m.order = order;
    m.base = base;
    m.g = entries;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b)
            if (!(m.at(a, b) - m.at(b, a)).is_zero()) throw std::invalid_argument("make_metric: not symmetric");

    // invert: g = g0 + h with h(base) = 0, so (g0^-1 h) is nilpotent to the
    // jet order and the Neumann series terminates
    std::vector<std::vector<Rational>> g0(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g0[static_cast<size_t>(a)][static_cast<size_t>(b)] = m.at(a, b).value_at_base();
    auto g0inv = invert_rational(g0);

    auto mat_mul = [n](const std::vector<Jet>& x, const std::vector<Jet>& y) {
        std::vector<Jet> z(static_cast<size_t>(n * n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Jet acc = x[static_cast<size_t>(a * n)] * y[static_cast<size_t>(b)];
                for (int c = 1; c < n; ++c) acc = acc + x[static_cast<size_t>(a * n + c)] * y[static_cast<size_t>(c * n + b)];
                z[static_cast<size_t>(a * n + b)] = acc;
            }
        return z;
    };

    std::vector<Jet> a_const(static_cast<size_t>(n * n));  // g0^-1 as constant jets
    std::vector<Jet> h(static_cast<size_t>(n * n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            a_const[static_cast<size_t>(a * n + b)] =
                Jet::constant(n, order, base, g0inv[static_cast<size_t>(a)][static_cast<size_t>(b)]);
            Jet hd = m.at(a, b);
            hd.add_term(MultiIndex(n), -hd.value_at_base());
            h[static_cast<size_t>(a * n + b)] = hd;
        }
    std::vector<Jet> minus_ah = mat_mul(a_const, h);
    for (auto& j : minus_ah) j = -j;
    std::vector<Jet> term = a_const;  // (-(g0^-1 h))^k g0^-1
    std::vector<Jet> sum = a_const;
    for (int k = 1; k <= order; ++k) {
        term = mat_mul(minus_ah, term);
        bool all_zero = true;
        for (int i = 0; i < n * n; ++i) {
            sum[static_cast<size_t>(i)] = sum[static_cast<size_t>(i)] + term[static_cast<size_t>(i)];
            if (!term[static_cast<size_t>(i)].is_zero()) all_zero = false;
        }
        if (all_zero) break;
    }
    m.ginv = std::move(sum);
    return m;
}

MetricJet flat_metric(int n, int order) {
    std::vector<Rational> base(static_cast<size_t>(n));
    std::vector<Jet> entries(static_cast<size_t>(n * n), Jet(n, order, base));
    for (int a = 0; a < n; ++a)
        entries[static_cast<size_t>(a * n + a)] = Jet::constant(n, order, base, Rational(1));
    return make_metric(n, order, base, entries);
}

ConformalFactor make_conformal_factor(const Jet& omega) {
    if (omega.value_at_base() != Rational(1))
        throw std::invalid_argument("make_conformal_factor: Omega(base) must be 1");
    ConformalFactor cf;
    cf.omega = omega;
    Jet inv = omega.reciprocal();
    for (int a = 1; a <= omega.dim(); ++a) cf.upsilon.push_back(omega.diff(a) * inv);
    return cf;
}

GeometryCache geometry_cache(const MetricJet& m) {
    const int n = m.n;
    if (n < 3) throw std::invalid_argument("geometry_cache: requires n >= 3");
    GeometryCache c;
    c.metric = m;

    // dg[d][a][b] = d_d g_ab
    std::vector<Jet> dg(static_cast<size_t>(n * n * n));
    for (int d = 0; d < n; ++d)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                dg[static_cast<size_t>((d * n + a) * n + b)] = m.at(a, b).diff(d + 1);
    auto dgat = [&](int d, int a, int b) -> const Jet& { return dg[static_cast<size_t>((d * n + a) * n + b)]; };

    c.christoffel.resize(static_cast<size_t>(n * n * n), Jet(n, 0, m.base));
    const Rational half(1, 2);
    for (int cc = 0; cc < n; ++cc)
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Jet acc = m.inv(cc, 0) * (dgat(a, b, 0) + dgat(b, a, 0) - dgat(0, a, b));
                for (int d = 1; d < n; ++d) acc = acc + m.inv(cc, d) * (dgat(a, b, d) + dgat(b, a, d) - dgat(d, a, b));
                acc = half * acc;
                c.christoffel[static_cast<size_t>((cc * n + a) * n + b)] = acc;
                c.christoffel[static_cast<size_t>((cc * n + b) * n + a)] = acc;
            }

    // R^e_bcd = d_c Gamma^e_db - d_d Gamma^e_cb + Gamma^e_cf Gamma^f_db - Gamma^e_df Gamma^f_cb,
    // computed for c < d and extended by antisymmetry. Entries that stay zero
    // (the c = d diagonal) still carry the full curvature order.
    const int curv_order = m.order >= 2 ? m.order - 2 : 0;
    std::vector<Jet> riem_up(static_cast<size_t>(n * n * n * n), Jet(n, curv_order, m.base));
    auto up_at = [&](int e, int b, int cc, int d) -> Jet& {
        return riem_up[static_cast<size_t>(((e * n + b) * n + cc) * n + d)];
    };
    for (int e = 0; e < n; ++e)
        for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc)
                for (int d = cc + 1; d < n; ++d) {
                    Jet acc = c.gamma(e, d, b).diff(cc + 1) - c.gamma(e, cc, b).diff(d + 1);
                    for (int f = 0; f < n; ++f)
                        acc = acc + c.gamma(e, cc, f) * c.gamma(f, d, b) - c.gamma(e, d, f) * c.gamma(f, cc, b);
                    up_at(e, b, cc, d) = acc;
                    up_at(e, b, d, cc) = -acc;
                }

    c.riemann.resize(static_cast<size_t>(n * n * n * n), Jet(n, curv_order, m.base));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc)
                for (int d = cc + 1; d < n; ++d) {
                    Jet acc = m.at(a, 0) * up_at(0, b, cc, d);
                    for (int e = 1; e < n; ++e) acc = acc + m.at(a, e) * up_at(e, b, cc, d);
                    c.riemann[static_cast<size_t>(((a * n + b) * n + cc) * n + d)] = acc;
                    c.riemann[static_cast<size_t>(((a * n + b) * n + d) * n + cc)] = -acc;
                }

    c.ricci.resize(static_cast<size_t>(n * n), Jet(n, curv_order, m.base));
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
            Jet acc(n, curv_order, m.base);
            for (int a = 0; a < n; ++a)
                for (int cc = 0; cc < n; ++cc) acc = acc + m.inv(a, cc) * c.riem(a, b, cc, d);
            c.ricci[static_cast<size_t>(b * n + d)] = acc;
        }

    c.scalar = Jet(n, curv_order, m.base);
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) c.scalar = c.scalar + m.inv(b, d) * c.ric(b, d);

    c.phi.resize(static_cast<size_t>(n * n), Jet(n, curv_order, m.base));
    const Rational invn2(1, n - 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            c.phi[static_cast<size_t>(a * n + b)] =
                invn2 * (c.ric(a, b) - Rational(1, n) * (c.scalar * m.at(a, b)));
    return c;
}

MetricJet rescale(const MetricJet& m, const Jet& omega) {
    if (omega.value_at_base() != Rational(1)) throw std::invalid_argument("rescale: Omega(base) must be 1");
    Jet om2 = omega * omega;
    std::vector<Jet> entries(static_cast<size_t>(m.n * m.n));
    for (int i = 0; i < m.n * m.n; ++i) entries[static_cast<size_t>(i)] = om2 * m.g[static_cast<size_t>(i)];
    return make_metric(m.n, m.order, m.base, entries);
}

JetField transform_field(const JetField& t, const Jet& omega) {
    if (t.weight().is_zero()) return t;
    Jet factor = omega.pow_rational(t.weight());
    JetField out = t;
    for (auto& comp : out.components()) comp = factor * comp;
    return out;
}

JetField transform_field_const(const JetField& t, const Rational& s, const Rational& w) {
    // c = s^2, so c^w = s^(2w) needs 2w integral
    Rational two_w = Rational(2) * w;
    if (!two_w.is_integer()) throw std::invalid_argument("transform_field_const: 2w must be an integer");
    Rational factor = s.pow_int(two_w.num_as_long());
    JetField out = t;
    for (auto& comp : out.components()) comp = factor * comp;
    return out;
}

MetricJet rescale_const(const MetricJet& m, const Rational& s) {
    Rational c2 = s * s * s * s;  // Omega = s^2, metric scales by Omega^2
    std::vector<Jet> entries(static_cast<size_t>(m.n * m.n));
    for (int i = 0; i < m.n * m.n; ++i) entries[static_cast<size_t>(i)] = c2 * m.g[static_cast<size_t>(i)];
    return make_metric(m.n, m.order, m.base, entries);
}

JetField cov_deriv(const GeometryCache& c, const JetField& t) {
    const int n = t.dim();
    std::vector<Variance> shape{Variance::Down};
    shape.insert(shape.end(), t.shape().begin(), t.shape().end());
    JetField out(n, shape, SymTag::None, t.weight(), Jet(n, 0, c.metric.base));
    out.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        const int a = idx[0];
        std::vector<int> rest(idx.begin() + 1, idx.end());
        Jet r = t.at(rest).diff(a + 1);
        for (size_t k = 0; k < rest.size(); ++k) {
            std::vector<int> sub = rest;
            for (int d = 0; d < n; ++d) {
                sub[k] = d;
                if (t.shape()[k] == Variance::Up)
                    r = r + c.gamma(rest[k], a, d) * t.at(sub);
                else
                    r = r - c.gamma(d, a, rest[k]) * t.at(sub);
            }
        }
        out.components()[flat] = r;
    });
    return out;
}

JetField lower_index(const GeometryCache& c, const JetField& t, int slot) {
    if (t.shape()[static_cast<size_t>(slot)] != Variance::Up) throw std::invalid_argument("lower_index: slot not Up");
    const int n = t.dim();
    auto shape = t.shape();
    shape[static_cast<size_t>(slot)] = Variance::Down;
    JetField out(n, shape, SymTag::None, t.weight(), Jet(n, 0, c.metric.base));
    out.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        Jet r(n, c.metric.order, c.metric.base);
        std::vector<int> src = idx;
        for (int d = 0; d < n; ++d) {
            src[static_cast<size_t>(slot)] = d;
            r = r + c.metric.at(idx[static_cast<size_t>(slot)], d) * t.at(src);
        }
        out.components()[flat] = r;
    });
    return out;
}

JetField raise_index(const GeometryCache& c, const JetField& t, int slot) {
    if (t.shape()[static_cast<size_t>(slot)] != Variance::Down) throw std::invalid_argument("raise_index: slot not Down");
    const int n = t.dim();
    auto shape = t.shape();
    shape[static_cast<size_t>(slot)] = Variance::Up;
    JetField out(n, shape, SymTag::None, t.weight(), Jet(n, 0, c.metric.base));
    out.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        Jet r(n, c.metric.order, c.metric.base);
        std::vector<int> src = idx;
        for (int d = 0; d < n; ++d) {
            src[static_cast<size_t>(slot)] = d;
            r = r + c.metric.inv(idx[static_cast<size_t>(slot)], d) * t.at(src);
        }
        out.components()[flat] = r;
    });
    return out;
}

JetField contract(const JetField& t, int slot_a, int slot_b) {
    if (t.shape()[static_cast<size_t>(slot_a)] == t.shape()[static_cast<size_t>(slot_b)])
        throw std::invalid_argument("contract: slots must have opposite variance");
    const int n = t.dim();
    std::vector<Variance> shape;
    for (int k = 0; k < t.rank(); ++k)
        if (k != slot_a && k != slot_b) shape.push_back(t.shape()[static_cast<size_t>(k)]);
    // base point comes from any component
    JetField out(n, shape, SymTag::None, t.weight(), Jet(n, 0, t.components().front().base()));
    out.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        Jet r(n, t.components().front().order(), t.components().front().base());
        for (int d = 0; d < n; ++d) {
            std::vector<int> full(static_cast<size_t>(t.rank()));
            size_t src = 0;
            for (int k = 0; k < t.rank(); ++k) {
                if (k == slot_a || k == slot_b)
                    full[static_cast<size_t>(k)] = d;
                else
                    full[static_cast<size_t>(k)] = idx[src++];
            }
            r = r + t.at(full);
        }
        out.components()[flat] = r;
    });
    return out;
}

JetField metric_trace(const GeometryCache& c, const JetField& t, int slot_a, int slot_b) {
    if (t.shape()[static_cast<size_t>(slot_a)] != t.shape()[static_cast<size_t>(slot_b)])
        throw std::invalid_argument("metric_trace: slots must have equal variance");
    bool up = t.shape()[static_cast<size_t>(slot_a)] == Variance::Up;
    const int n = t.dim();
    std::vector<Variance> shape;
    for (int k = 0; k < t.rank(); ++k)
        if (k != slot_a && k != slot_b) shape.push_back(t.shape()[static_cast<size_t>(k)]);
    JetField out(n, shape, SymTag::None, t.weight(), Jet(n, 0, c.metric.base));
    out.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        Jet r(n, c.metric.order, c.metric.base);
        for (int d = 0; d < n; ++d)
            for (int e = 0; e < n; ++e) {
                std::vector<int> full(static_cast<size_t>(t.rank()));
                size_t src = 0;
                for (int k = 0; k < t.rank(); ++k) {
                    if (k == slot_a)
                        full[static_cast<size_t>(k)] = d;
                    else if (k == slot_b)
                        full[static_cast<size_t>(k)] = e;
                    else
                        full[static_cast<size_t>(k)] = idx[src++];
                }
                r = r + (up ? c.metric.at(d, e) : c.metric.inv(d, e)) * t.at(full);
            }
        out.components()[flat] = r;
    });
    return out;
}

JetField connection_change_residual(const GeometryCache& cg, const GeometryCache& cghat,
                                    const ConformalFactor& cf, const JetField& t) {
    const int n = t.dim();
    JetField that = transform_field(t, cf.omega);
    JetField lhs = cov_deriv(cghat, that);

    // Upsilon with raised index (via g)
    std::vector<Jet> ups_up(static_cast<size_t>(n), Jet(n, 0, cg.metric.base));
    for (int a = 0; a < n; ++a) {
        Jet acc = cg.metric.inv(a, 0) * cf.upsilon[0];
        for (int d = 1; d < n; ++d) acc = acc + cg.metric.inv(a, d) * cf.upsilon[static_cast<size_t>(d)];
        ups_up[static_cast<size_t>(a)] = acc;
    }
    auto gamma_corr = [&](int a, int b, int cidx) {
        // Gamma_ab^c = Ups_a delta_b^c + Ups_b delta_a^c - g_ab Ups^c
        Jet r(n, cf.omega.order() - 1, cg.metric.base);
        if (b == cidx) r = r + cf.upsilon[static_cast<size_t>(a)];
        if (a == cidx) r = r + cf.upsilon[static_cast<size_t>(b)];
        r = r - cg.metric.at(a, b) * ups_up[static_cast<size_t>(cidx)];
        return r;
    };

    JetField inner = cov_deriv(cg, t);
    inner.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        const int a = idx[0];
        std::vector<int> rest(idx.begin() + 1, idx.end());
        Jet r = inner.components()[flat];
        r = r + t.weight() * (cf.upsilon[static_cast<size_t>(a)] * t.at(rest));
        for (size_t k = 0; k < rest.size(); ++k) {
            std::vector<int> sub = rest;
            for (int d = 0; d < n; ++d) {
                sub[k] = d;
                if (t.shape()[k] == Variance::Up)
                    r = r + gamma_corr(a, d, rest[k]) * t.at(sub);
                else
                    r = r - gamma_corr(a, rest[k], d) * t.at(sub);
            }
        }
        inner.components()[flat] = r;
    });
    JetField rhs = transform_field(inner, cf.omega);
    return lhs - rhs;
}

JetField connection_change_residual(const JetField& t, const MetricJet& g, const Jet& omega) {
    GeometryCache cg = geometry_cache(g);
    GeometryCache cghat = geometry_cache(rescale(g, omega));
    return connection_change_residual(cg, cghat, make_conformal_factor(omega), t);
}

CurvatureTransformResiduals curvature_transform_residual(const GeometryCache& cg, const GeometryCache& cghat,
                                                         const ConformalFactor& cf) {
    const int n = cg.dim();
    const auto& base = cg.metric.base;
    // nabla_a Ups_b in g, then Xi_ab = nabla_a Ups_b - Ups_a Ups_b + 1/2 |Ups|^2 g_ab
    std::vector<Jet> ups_up(static_cast<size_t>(n), Jet(n, 0, base));
    for (int a = 0; a < n; ++a) {
        Jet acc = cg.metric.inv(a, 0) * cf.upsilon[0];
        for (int d = 1; d < n; ++d) acc = acc + cg.metric.inv(a, d) * cf.upsilon[static_cast<size_t>(d)];
        ups_up[static_cast<size_t>(a)] = acc;
    }
    Jet ups2(n, cf.omega.order() - 1, base);
    for (int a = 0; a < n; ++a) ups2 = ups2 + cf.upsilon[static_cast<size_t>(a)] * ups_up[static_cast<size_t>(a)];

    std::vector<Jet> xi(static_cast<size_t>(n * n), Jet(n, 0, base));
    Jet div_ups(n, cf.omega.order() - 2, base);  // nabla^a Ups_a
    const Rational half(1, 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Jet nab = cf.upsilon[static_cast<size_t>(b)].diff(a + 1);
            for (int d = 0; d < n; ++d) nab = nab - cg.gamma(d, a, b) * cf.upsilon[static_cast<size_t>(d)];
            xi[static_cast<size_t>(a * n + b)] =
                nab - cf.upsilon[static_cast<size_t>(a)] * cf.upsilon[static_cast<size_t>(b)] +
                half * (ups2 * cg.metric.at(a, b));
            div_ups = div_ups + cg.metric.inv(a, b) * nab;
        }

    Jet om2 = cf.omega * cf.omega;
    auto xat = [&](int a, int b) -> const Jet& { return xi[static_cast<size_t>(a * n + b)]; };

    CurvatureTransformResiduals out{JetField(n, {Variance::Down, Variance::Down, Variance::Down, Variance::Down},
                                             SymTag::None, Rational(0), Jet(n, 0, base)),
                                    Jet(n, 0, base)};
    out.riemann_residual.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        int a = idx[0], b = idx[1], cc = idx[2], d = idx[3];
        Jet expect = cg.riem(a, b, cc, d) - xat(a, cc) * cg.metric.at(b, d) + xat(b, cc) * cg.metric.at(a, d) -
                     xat(b, d) * cg.metric.at(a, cc) + xat(a, d) * cg.metric.at(b, cc);
        out.riemann_residual.components()[flat] = cghat.riem(a, b, cc, d) - om2 * expect;
    });

    const Rational k = Rational(-2L * (n - 1));
    Jet expect_scalar = cg.scalar + k * (div_ups + (Rational(n, 2) - Rational(1)) * ups2);
    out.scalar_residual = cghat.scalar - om2.reciprocal() * expect_scalar;
    return out;
}

CurvatureTransformResiduals curvature_transform_residual(const MetricJet& g, const Jet& omega) {
    GeometryCache cg = geometry_cache(g);
    GeometryCache cghat = geometry_cache(rescale(g, omega));
    return curvature_transform_residual(cg, cghat, make_conformal_factor(omega));
}

}  // namespace confsym
