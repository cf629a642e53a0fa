// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/symmetry.hpp"

#include <map>

#include "confsym/ckt.hpp"
#include "confsym/matrix.hpp"

namespace confsym {

namespace {

Poly divergence(const PolyField& v) {
    const int n = v.dim();
    Poly d(n);
    for (int a = 0; a < n; ++a) d += v.at({a}).diff(a + 1);
    return d;
}

Poly dot(const PolyField& v, const PolyField& w) {
    const int n = v.dim();
    Poly d(n);
    for (int a = 0; a < n; ++a) d += v.at({a}) * w.at({a});
    return d;
}

}  // namespace

DiffOp build_first_order(const PolyField& v, const Rational& w) {
    if (v.rank() != 1) throw std::invalid_argument("build_first_order: valence-1 field required");
    const int n = v.dim();
    DiffOp d(n);
    for (int a = 0; a < n; ++a) d.add_term(MultiIndex(n).plus(a + 1), v.at({a}));
    d.add_term(MultiIndex(n), (-w / Rational(n)) * divergence(v));
    return d;
}

DiffOp build_second_order(const PolyField& v2) {
    if (v2.rank() != 2 || v2.sym() != SymTag::SymmetricTraceFree)
        throw std::invalid_argument("build_second_order: symmetric trace-free valence-2 field required");
    const int n = v2.dim();
    DiffOp d(n);
    Poly ddv(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            d.add_term(MultiIndex(n).plus(a + 1).plus(b + 1), v2.at({a, b}));
            ddv += v2.at({a, b}).diff(a + 1).diff(b + 1);
        }
    }
    const Rational c1(n, n + 2);
    for (int b = 0; b < n; ++b) {
        Poly dv(n);
        for (int a = 0; a < n; ++a) dv += v2.at({a, b}).diff(a + 1);
        d.add_term(MultiIndex(n).plus(b + 1), c1 * dv);
    }
    const Rational c0 = Rational(static_cast<long>(n - 2) * n) / Rational(4L * (n + 1) * (n + 2));
    d.add_term(MultiIndex(n), c0 * ddv);
    return d;
}

DiffOp build_delta(int order, const PolyField& v) {
    const int n = v.dim();
    if (order == 1) {
        if (v.rank() != 1) throw std::invalid_argument("build_delta: valence-1 field required");
        DiffOp d(n);
        for (int a = 0; a < n; ++a) d.add_term(MultiIndex(n).plus(a + 1), v.at({a}));
        d.add_term(MultiIndex(n), Rational(n + 2, 2L * n) * divergence(v));
        return d;
    }
    if (order == 2) {
        if (v.rank() != 2 || v.sym() != SymTag::SymmetricTraceFree)
            throw std::invalid_argument("build_delta: symmetric trace-free valence-2 field required");
        DiffOp d(n);
        Poly ddv(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                d.add_term(MultiIndex(n).plus(a + 1).plus(b + 1), v.at({a, b}));
                ddv += v.at({a, b}).diff(a + 1).diff(b + 1);
            }
        const Rational c1(n + 4, n + 2);
        for (int b = 0; b < n; ++b) {
            Poly dv(n);
            for (int a = 0; a < n; ++a) dv += v.at({a, b}).diff(a + 1);
            d.add_term(MultiIndex(n).plus(b + 1), c1 * dv);
        }
        d.add_term(MultiIndex(n), Rational(n + 4, 4L * (n + 1)) * ddv);
        return d;
    }
    throw std::invalid_argument("build_delta: order must be 1 or 2");
}

SymmetryPair check_intertwine(const DiffOp& l, const DiffOp& d, const DiffOp& delta) {
    SymmetryPair p;
    p.d = d;
    p.delta = delta;
    p.residual = compose(l, d) - compose(delta, l);
    p.verified = p.residual.is_zero();
    return p;
}

std::optional<DiffOp> find_delta(const DiffOp& l, const DiffOp& d, int max_order, int max_degree) {
    const int n = l.dim();
    const DiffOp target = compose(l, d);

    struct Unknown {
        MultiIndex beta;
        MultiIndex mon;
    };
    std::vector<Unknown> unknowns;
    for (const auto& beta : multi_indices_up_to_degree(n, max_order))
        for (const auto& mon : multi_indices_up_to_degree(n, max_degree)) unknowns.push_back({beta, mon});

    std::map<std::pair<MultiIndex, MultiIndex>, int> row_ids;
    auto row_of = [&](const MultiIndex& beta, const MultiIndex& mon) {
        auto key = std::make_pair(beta, mon);
        auto it = row_ids.find(key);
        if (it != row_ids.end()) return it->second;
        int id = static_cast<int>(row_ids.size());
        row_ids.emplace(key, id);
        return id;
    };
    std::vector<std::vector<std::pair<int, Rational>>> cols(unknowns.size());
    for (size_t u = 0; u < unknowns.size(); ++u) {
        Poly m(n);
        m.set_coeff(unknowns[u].mon, Rational(1));
        DiffOp unit(n);
        unit.add_term(unknowns[u].beta, m);
        DiffOp prod = compose(unit, l);
        for (const auto& [beta, coeff] : prod.terms())
            for (const auto& [mon, c] : coeff.terms()) cols[u].emplace_back(row_of(beta, mon), c);
    }
    std::vector<std::pair<int, Rational>> rhs_entries;
    for (const auto& [beta, coeff] : target.terms())
        for (const auto& [mon, c] : coeff.terms()) rhs_entries.emplace_back(row_of(beta, mon), c);

    const int nrows = static_cast<int>(row_ids.size());
    SparseSystem sys;
    sys.cols = static_cast<int>(unknowns.size());
    sys.rows.assign(static_cast<size_t>(nrows), {});
    for (size_t u = 0; u < unknowns.size(); ++u)
        for (const auto& [r, c] : cols[u]) sys.rows[static_cast<size_t>(r)].emplace_back(static_cast<int>(u), c);
    std::vector<Rational> rhs(static_cast<size_t>(nrows));
    for (const auto& [r, c] : rhs_entries) rhs[static_cast<size_t>(r)] += c;

    auto solution = exact_solve(sys, rhs);
    if (!solution) return std::nullopt;
    DiffOp delta(n);
    for (size_t u = 0; u < unknowns.size(); ++u) {
        if (solution->at(u).is_zero()) continue;
        Poly m(n);
        m.set_coeff(unknowns[u].mon, solution->at(u));
        delta.add_term(unknowns[u].beta, m);
    }
    // the ansatz guarantees delta L = L D only if the solver saw every row
    if (compose(delta, l) != target) return std::nullopt;
    return delta;
}

VectorAlgebra algebra_ops(const PolyField& v, const PolyField& w) {
    if (v.rank() != 1 || w.rank() != 1) throw std::invalid_argument("algebra_ops: valence-1 fields required");
    const int n = v.dim();
    VectorAlgebra out{
        PolyField(n, {Variance::Up, Variance::Up}, SymTag::SymmetricTraceFree, Rational(0), Poly(n)),
        PolyField(n, {Variance::Up}, SymTag::None, Rational(0), Poly(n)), Poly(n)};

    Poly vw = dot(v, w);
    const Rational half(1, 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Poly p = half * (v.at({a}) * w.at({b})) + half * (v.at({b}) * w.at({a}));
            if (a == b) p -= Rational(1, n) * vw;
            out.sym_product.at({a, b}) = p;
        }

    for (int a = 0; a < n; ++a) {
        Poly br(n);
        for (int b = 0; b < n; ++b) br += v.at({b}) * w.at({a}).diff(b + 1) - w.at({b}) * v.at({a}).diff(b + 1);
        out.bracket.at({a}) = br;
    }

    Poly divv = divergence(v), divw = divergence(w);
    Poly inner(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) inner += v.at({a}).diff(b + 1) * w.at({b}).diff(a + 1);
    inner = Rational(n + 2) * inner;
    const Rational k(n + 2, n);
    inner -= k * (divv * divw);
    Poly vddw(n), wddv(n);
    for (int a = 0; a < n; ++a) {
        vddw += v.at({a}) * divw.diff(a + 1);
        wddv += w.at({a}) * divv.diff(a + 1);
    }
    inner -= k * vddw;
    inner -= k * wddv;
    for (int a = 0; a < n; ++a) inner += vw.diff(a + 1).diff(a + 1);
    out.inner = inner;
    return out;
}

DiffOp composition_identity_residual(const PolyField& v, const PolyField& w) {
    const int n = v.dim();
    if (!conformal_killing_residual(v, 1).is_zero() || !conformal_killing_residual(w, 1).is_zero())
        throw std::invalid_argument("composition_identity_residual: inputs must be conformal Killing fields");
    const Rational wt = Rational(1) - Rational(n, 2);
    VectorAlgebra alg = algebra_ops(v, w);
    DiffOp lhs = compose(build_first_order(v, wt), build_first_order(w, wt));
    DiffOp res = lhs - build_second_order(alg.sym_product);
    res -= Rational(1, 2) * build_first_order(alg.bracket, wt);
    res += Rational(n - 2, 4L * n * (n + 1)) * DiffOp::multiplication(alg.inner);
    res -= Rational(1, n) * compose(DiffOp::multiplication(dot(v, w)), DiffOp::laplacian(n));
    return res;
}

DiffOp bracket_identity_residual(const PolyField& v, const PolyField& w, const Rational& weight) {
    VectorAlgebra alg = algebra_ops(v, w);
    return commutator(build_first_order(v, weight), build_first_order(w, weight)) - build_first_order(alg.bracket, weight);
}

DiffOp bracket_identity_residual(const PolyField& v, const PolyField& w) {
    return bracket_identity_residual(v, w, Rational(1) - Rational(v.dim(), 2));
}

PolyField lie_derivative(const PolyField& v, const PolyField& phi, const PolyField* gamma) {
    const int n = v.dim();
    if (v.rank() != 1) throw std::invalid_argument("lie_derivative: valence-1 field required");
    for (auto var : phi.shape())
        if (var != Variance::Down) throw std::invalid_argument("lie_derivative: phi must be covariant");
    if (gamma) {
        if (gamma->rank() != 3) throw std::invalid_argument("lie_derivative: Gamma must have shape (down,down,up)");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (gamma->at({a, b, c}) != gamma->at({b, a, c}))
                        throw std::invalid_argument("lie_derivative: Gamma must be symmetric in its lower indices");
    }
    auto nabla_phi = [&](int a, const std::vector<int>& idx) {
        Poly r = phi.at(idx).diff(a + 1);
        if (gamma) {
            for (size_t k = 0; k < idx.size(); ++k) {
                for (int dd = 0; dd < n; ++dd) {
                    std::vector<int> sub = idx;
                    sub[k] = dd;
                    r -= gamma->at({a, idx[k], dd}) * phi.at(sub);
                }
            }
        }
        return r;
    };
    auto nabla_v = [&](int b, int a) {
        Poly r = v.at({a}).diff(b + 1);
        if (gamma)
            for (int dd = 0; dd < n; ++dd) r += gamma->at({b, dd, a}) * v.at({dd});
        return r;
    };
    PolyField out(n, phi.shape(), phi.sym(), phi.weight(), Poly(n));
    out.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        Poly r(n);
        for (int a = 0; a < n; ++a) r += v.at({a}) * nabla_phi(a, idx);
        for (size_t k = 0; k < idx.size(); ++k) {
            for (int a = 0; a < n; ++a) {
                std::vector<int> sub = idx;
                sub[k] = a;
                r += nabla_v(idx[k], a) * phi.at(sub);
            }
        }
        out.components()[flat] = r;
    });
    return out;
}

std::vector<DiffOp> laplacian_symmetries_r3() {
    const int n = 3;
    auto x = [&](int i) { return Poly::variable(n, i); };
    auto mono = [&](const Poly& p, int i) {
        DiffOp d(n);
        d.add_term(MultiIndex(n).plus(i), p);
        return d;
    };
    auto rot = [&](int i, int j) { return mono(x(i), j) - mono(x(j), i); };  // x_i d_j - x_j d_i
    auto inv = [&](int i) {
        // (x_i^2 - x_j^2 - x_k^2) d_i + 2 x_i x_j d_j + 2 x_i x_k d_k + x_i
        int j = i % 3 + 1, k = j % 3 + 1;
        DiffOp d = mono(x(i) * x(i) - x(j) * x(j) - x(k) * x(k), i);
        d += mono(Rational(2) * (x(i) * x(j)), j);
        d += mono(Rational(2) * (x(i) * x(k)), k);
        d += DiffOp::multiplication(x(i));
        return d;
    };
    std::vector<DiffOp> gens;
    gens.push_back(DiffOp::identity(n));
    for (int i = 1; i <= 3; ++i) gens.push_back(DiffOp::partial(n, i));
    gens.push_back(mono(x(1), 1) + mono(x(2), 2) + mono(x(3), 3));
    gens.push_back(rot(1, 2));
    gens.push_back(inv(1));
    gens.push_back(rot(2, 3));
    gens.push_back(inv(2));
    gens.push_back(rot(3, 1));
    gens.push_back(inv(3));
    return gens;
}

}  // namespace confsym
