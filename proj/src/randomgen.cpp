// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/randomgen.hpp"

namespace confsym {

Poly random_poly(Rng& rng, int n, int max_degree, bool zero_constant) {
    Poly p(n);
    for (const auto& m : multi_indices_up_to_degree(n, max_degree)) {
        if (zero_constant && m.degree() == 0) continue;
        if (rng.next() % 2 == 0) continue;  // keep it sparse
        p.add_term(m, rng.coeff());
    }
    return p;
}

MetricJet random_metric(Rng& rng, int n, int order) {
    std::vector<Rational> base(static_cast<size_t>(n));
    std::vector<Jet> entries(static_cast<size_t>(n * n), Jet(n, order, base));
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            Poly h = random_poly(rng, n, 3, /*zero_constant=*/true);
            Poly entry = a == b ? Poly::constant(n, Rational(1)) + h : h;
            Jet j = Jet::from_poly(entry, base, order);
            entries[static_cast<size_t>(a * n + b)] = j;
            entries[static_cast<size_t>(b * n + a)] = j;
        }
    }
    return make_metric(n, order, base, entries);
}

Jet random_conformal_factor(Rng& rng, int n, int order) {
    std::vector<Rational> base(static_cast<size_t>(n));
    Poly p = Poly::constant(n, Rational(1)) + random_poly(rng, n, 2, /*zero_constant=*/true);
    return Jet::from_poly(p, base, order);
}

JetField random_scalar_density(Rng& rng, int n, int order, const Rational& w) {
    std::vector<Rational> base(static_cast<size_t>(n));
    JetField f(n, {}, SymTag::None, w, Jet(n, order, base));
    f.scalar() = Jet::from_poly(random_poly(rng, n, 3, false) + Poly::constant(n, Rational(1)), base, order);
    return f;
}

JetField random_vector_field(Rng& rng, int n, int order, const Rational& w) {
    std::vector<Rational> base(static_cast<size_t>(n));
    JetField v(n, {Variance::Up}, SymTag::None, w, Jet(n, order, base));
    for (int a = 0; a < n; ++a) v.at({a}) = Jet::from_poly(random_poly(rng, n, 3, false), base, order);
    return v;
}

JetField random_oneform_field(Rng& rng, int n, int order, const Rational& w) {
    std::vector<Rational> base(static_cast<size_t>(n));
    JetField v(n, {Variance::Down}, SymTag::None, w, Jet(n, order, base));
    for (int a = 0; a < n; ++a) v.at({a}) = Jet::from_poly(random_poly(rng, n, 3, false), base, order);
    return v;
}

JetField random_stf2_field(Rng& rng, const GeometryCache& c, const Rational& w) {
    const int n = c.dim();
    const int order = c.metric.order;
    const auto& base = c.metric.base;
    JetField v(n, {Variance::Up, Variance::Up}, SymTag::SymmetricTraceFree, w, Jet(n, order, base));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Jet j = Jet::from_poly(random_poly(rng, n, 2, false), base, order);
            v.at({a, b}) = j;
            v.at({b, a}) = j;
        }
    // remove the g-trace: V -> V - (g_cd V^cd / n) g^ab
    Jet tr(n, order, base);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) tr = tr + c.metric.at(a, b) * v.at({a, b});
    tr = Rational(1, n) * tr;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) v.at({a, b}) = v.at({a, b}) - tr * c.metric.inv(a, b);
    return v;
}

PolyField random_symmetric_gamma(Rng& rng, int n, int max_degree) {
    PolyField g(n, {Variance::Down, Variance::Down, Variance::Up}, SymTag::None, Rational(0), Poly(n));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int cc = 0; cc < n; ++cc) {
                Poly p = random_poly(rng, n, max_degree, false);
                g.at({a, b, cc}) = p;
                g.at({b, a, cc}) = p;
            }
    return g;
}

}  // namespace confsym
