// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/ckt.hpp"

#include <map>

namespace confsym {

CKParams CKParams::zero(int n) {
    CKParams p;
    p.s.assign(static_cast<size_t>(n), Rational(0));
    p.m.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    p.r.assign(static_cast<size_t>(n), Rational(0));
    return p;
}

PolyField ckv_from_parameters(int n, const CKParams& p) {
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (p.m[static_cast<size_t>(a)][static_cast<size_t>(b)] != -p.m[static_cast<size_t>(b)][static_cast<size_t>(a)])
                throw std::invalid_argument("ckv_from_parameters: m is not skew");
    Poly rx(n);  // r.x
    Poly xx(n);  // x.x
    for (int b = 0; b < n; ++b) {
        Poly xb = Poly::variable(n, b + 1);
        rx += p.r[static_cast<size_t>(b)] * xb;
        xx += xb * xb;
    }
    std::vector<Poly> comps;
    comps.reserve(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
        Poly xa = Poly::variable(n, a + 1);
        Poly va = Poly::constant(n, -p.s[static_cast<size_t>(a)]);
        for (int b = 0; b < n; ++b)
            va -= p.m[static_cast<size_t>(a)][static_cast<size_t>(b)] * Poly::variable(n, b + 1);
        va += p.lambda * xa;
        va += rx * xa;
        va -= Rational(1, 2) * (xx * Poly::constant(n, p.r[static_cast<size_t>(a)]));
        comps.push_back(va);
    }
    return make_poly_vector(n, comps);
}

PolyField conformal_killing_residual(const PolyField& v, int valence) {
    const int n = v.dim();
    if (v.rank() != valence) throw std::invalid_argument("conformal_killing_residual: valence mismatch");
    if (valence == 1) {
        Poly div(n);
        for (int c = 0; c < n; ++c) div += v.at({c}).diff(c + 1);
        PolyField res(n, {Variance::Down, Variance::Down}, SymTag::Symmetric, Rational(0), Poly(n));
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                Poly r = v.at({b}).diff(a + 1) + v.at({a}).diff(b + 1);
                if (a == b) r -= Rational(2, n) * div;
                res.at({a, b}) = r;
            }
        }
        return res;
    }
    if (valence == 2) {
        if (v.sym() != SymTag::SymmetricTraceFree)
            throw std::invalid_argument("conformal_killing_residual: valence-2 input must be symmetric trace-free");
        std::vector<Poly> divv(static_cast<size_t>(n), Poly(n));  // D_c = d_d V_cd
        for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) divv[static_cast<size_t>(c)] += v.at({c, d}).diff(d + 1);
        PolyField res(n, {Variance::Down, Variance::Down, Variance::Down}, SymTag::Symmetric, Rational(0), Poly(n));
        const Rational k(2, n + 2);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                for (int c = 0; c < n; ++c) {
                    Poly r = v.at({b, c}).diff(a + 1) + v.at({c, a}).diff(b + 1) + v.at({a, b}).diff(c + 1);
                    if (a == b) r -= k * divv[static_cast<size_t>(c)];
                    if (b == c) r -= k * divv[static_cast<size_t>(a)];
                    if (c == a) r -= k * divv[static_cast<size_t>(b)];
                    res.at({a, b, c}) = r;
                }
            }
        }
        return res;
    }
    throw std::invalid_argument("conformal_killing_residual: valence must be 1 or 2");
}

namespace {

// Independent components of the ansatz; valence-2 trace is eliminated
// against the last diagonal entry.
std::vector<std::pair<int, int>> independent_components(int n, int valence) {
    std::vector<std::pair<int, int>> comps;
    if (valence == 1) {
        for (int a = 0; a < n; ++a) comps.emplace_back(a, -1);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (!(i == n - 1 && j == n - 1)) comps.emplace_back(i, j);
    }
    return comps;
}

// Unit ansatz field for one unknown: the given monomial in one independent
// component, with the symmetric and trace-completion entries filled in.
PolyField unit_field(int n, int valence, const std::pair<int, int>& comp, const MultiIndex& mon) {
    Poly m(n);
    m.set_coeff(mon, Rational(1));
    if (valence == 1) {
        PolyField f(n, {Variance::Up}, SymTag::None, Rational(0), Poly(n));
        f.at({comp.first}) = m;
        return f;
    }
    PolyField f(n, {Variance::Up, Variance::Up}, SymTag::SymmetricTraceFree, Rational(0), Poly(n));
    f.at({comp.first, comp.second}) += m;
    if (comp.first != comp.second)
        f.at({comp.second, comp.first}) += m;
    else
        f.at({n - 1, n - 1}) -= m;
    return f;
}

std::vector<std::vector<int>> equation_tuples(int n, int valence) {
    std::vector<std::vector<int>> tuples;
    if (valence == 1) {
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) tuples.push_back({a, b});
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b)
                for (int c = b; c < n; ++c) tuples.push_back({a, b, c});
    }
    return tuples;
}

SparseSystem assemble_block(int n, int valence, int degree) {
    const auto comps = independent_components(n, valence);
    const auto mons = multi_indices_of_degree(n, degree);
    const auto tuples = equation_tuples(n, valence);
    const auto eq_mons = degree >= 1 ? multi_indices_of_degree(n, degree - 1) : std::vector<MultiIndex>{};

    std::map<MultiIndex, int> eq_mon_index;
    for (size_t i = 0; i < eq_mons.size(); ++i) eq_mon_index[eq_mons[i]] = static_cast<int>(i);

    const int ncols = static_cast<int>(comps.size() * mons.size());
    const int nrows = static_cast<int>(tuples.size() * eq_mons.size());
    // gather entries column by column, then emit rows
    std::vector<std::vector<std::pair<int, Rational>>> rows(static_cast<size_t>(nrows));
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        for (size_t mi = 0; mi < mons.size(); ++mi) {
            const int col = static_cast<int>(ci * mons.size() + mi);
            PolyField res = conformal_killing_residual(unit_field(n, valence, comps[ci], mons[mi]), valence);
            for (size_t ti = 0; ti < tuples.size(); ++ti) {
                const Poly& r = res.at(tuples[ti]);
                for (const auto& [mon, coeff] : r.terms()) {
                    const int row = static_cast<int>(ti) * static_cast<int>(eq_mons.size()) + eq_mon_index.at(mon);
                    rows[static_cast<size_t>(row)].emplace_back(col, coeff);
                }
            }
        }
    }
    SparseSystem sys;
    sys.cols = ncols;
    sys.rows = std::move(rows);
    return sys;
}

PolyField field_from_solution(int n, int valence, const std::vector<Rational>& x,
                              const std::vector<std::pair<int, int>>& comps, const std::vector<MultiIndex>& mons) {
    PolyField f = valence == 1 ? PolyField(n, {Variance::Up}, SymTag::None, Rational(0), Poly(n))
                               : PolyField(n, {Variance::Up, Variance::Up}, SymTag::SymmetricTraceFree, Rational(0), Poly(n));
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        for (size_t mi = 0; mi < mons.size(); ++mi) {
            const Rational& c = x[ci * mons.size() + mi];
            if (c.is_zero()) continue;
            Poly term(n);
            term.set_coeff(mons[mi], c);
            if (valence == 1) {
                f.at({comps[ci].first}) += term;
            } else {
                f.at({comps[ci].first, comps[ci].second}) += term;
                if (comps[ci].first != comps[ci].second)
                    f.at({comps[ci].second, comps[ci].first}) += term;
                else
                    f.at({n - 1, n - 1}) -= term;
            }
        }
    }
    return f;
}

}  // namespace

std::vector<PolyField> solve_conformal_killing_homogeneous(int n, int valence, int degree) {
    const auto comps = independent_components(n, valence);
    const auto mons = multi_indices_of_degree(n, degree);
    if (degree == 0) {
        // no equations at degree zero: every constant field solves
        std::vector<PolyField> basis;
        for (const auto& comp : comps) basis.push_back(unit_field(n, valence, comp, MultiIndex(n)));
        return basis;
    }
    SparseSystem sys = assemble_block(n, valence, degree);
    if (nullity_mod_p(sys) == 0) return {};
    std::vector<PolyField> basis;
    for (const auto& x : exact_nullspace(sys)) basis.push_back(field_from_solution(n, valence, x, comps, mons));
    return basis;
}

bool homogeneous_block_empty(int n, int valence, int degree) {
    return solve_conformal_killing_homogeneous(n, valence, degree).empty();
}

std::vector<PolyField> solve_conformal_killing(int n, int valence, int max_degree) {
    if (valence != 1 && valence != 2) throw std::invalid_argument("solve_conformal_killing: valence must be 1 or 2");
    std::vector<PolyField> basis;
    for (int d = 0; d <= max_degree; ++d) {
        auto block = solve_conformal_killing_homogeneous(n, valence, d);
        basis.insert(basis.end(), block.begin(), block.end());
    }
    return basis;
}

long expected_dimension(int n, int valence) {
    if (n < 3) throw std::invalid_argument("expected_dimension: requires n >= 3");
    if (valence == 1) return static_cast<long>(n + 1) * (n + 2) / 2;
    if (valence == 2) return static_cast<long>(n - 1) * (n + 2) * (n + 3) * (n + 4) / 12;
    throw std::invalid_argument("expected_dimension: valence must be 1 or 2");
}

}  // namespace confsym
