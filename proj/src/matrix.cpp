// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/matrix.hpp"

#include <algorithm>
#include <map>

namespace confsym {

std::vector<Rational> Matrix::apply(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Matrix::apply: size mismatch");
    std::vector<Rational> y(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) y[static_cast<size_t>(i)] += at(i, j) * x[static_cast<size_t>(j)];
    return y;
}

namespace {

struct IntRow {
    std::vector<std::pair<int, mpz_class>> ent;  // sorted by column
    mpz_class rhs;                               // augmented right-hand side
    int orig = 0;
};

// Scale a rational row to integers (lcm of denominators) and strip content.
IntRow scale_row(const std::vector<std::pair<int, Rational>>& row, const Rational& rhs, int orig) {
    IntRow r;
    r.orig = orig;
    mpz_class l = 1;
    for (const auto& [c, v] : row)
        if (!v.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.raw().get_den().get_mpz_t());
    if (!rhs.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rhs.raw().get_den().get_mpz_t());
    for (const auto& [c, v] : row) {
        if (v.is_zero()) continue;
        mpz_class x = v.raw().get_num() * (l / v.raw().get_den());
        r.ent.emplace_back(c, std::move(x));
    }
    std::sort(r.ent.begin(), r.ent.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    r.rhs = rhs.raw().get_num() * (l / rhs.raw().get_den());
    return r;
}

void strip_content(IntRow& r) {
    mpz_class g = ::abs(r.rhs);
    for (const auto& [c, v] : r.ent) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g <= 1) return;
    for (auto& [c, v] : r.ent) v /= g;
    r.rhs /= g;
}

// row_j <- pv * row_j - cj * pivot, merged by column, then content-stripped.
// cj is taken by value: it usually aliases an entry of rj.
void combine(IntRow& rj, mpz_class cj, const IntRow& piv, const mpz_class& pv) {
    std::vector<std::pair<int, mpz_class>> out;
    out.reserve(rj.ent.size() + piv.ent.size());
    size_t a = 0, b = 0;
    while (a < rj.ent.size() || b < piv.ent.size()) {
        if (b == piv.ent.size() || (a < rj.ent.size() && rj.ent[a].first < piv.ent[b].first)) {
            out.emplace_back(rj.ent[a].first, pv * rj.ent[a].second);
            ++a;
        } else if (a == rj.ent.size() || piv.ent[b].first < rj.ent[a].first) {
            out.emplace_back(piv.ent[b].first, -cj * piv.ent[b].second);
            ++b;
        } else {
            mpz_class v = pv * rj.ent[a].second - cj * piv.ent[b].second;
            if (v != 0) out.emplace_back(rj.ent[a].first, std::move(v));
            ++a;
            ++b;
        }
    }
    rj.ent = std::move(out);
    rj.rhs = pv * rj.rhs - cj * piv.rhs;
    strip_content(rj);
}

struct Echelon {
    std::vector<IntRow> pivot_rows;  // leading columns strictly increasing
    std::vector<int> pivot_cols;
    std::vector<IntRow> zero_rows;  // empty entry lists; rhs may be nonzero
    int cols = 0;
};

Echelon eliminate(std::vector<IntRow> rows, int cols) {
    Echelon ech;
    ech.cols = cols;
    // Bucket remaining rows by leading column; process columns left to right.
    std::map<int, std::vector<IntRow>> pending;
    auto push = [&](IntRow&& r) {
        if (r.ent.empty())
            ech.zero_rows.push_back(std::move(r));
        else {
            int lead = r.ent.front().first;
            pending[lead].push_back(std::move(r));
        }
    };
    for (auto& r : rows) push(std::move(r));
    while (!pending.empty()) {
        auto it = pending.begin();
        int col = it->first;
        std::vector<IntRow> bucket = std::move(it->second);
        pending.erase(it);
        // deterministic: smallest original row index is the pivot
        size_t best = 0;
        for (size_t i = 1; i < bucket.size(); ++i)
            if (bucket[i].orig < bucket[best].orig) best = i;
        IntRow piv = std::move(bucket[best]);
        bucket.erase(bucket.begin() + static_cast<long>(best));
        const mpz_class pv = piv.ent.front().second;
        for (auto& rj : bucket) {
            combine(rj, rj.ent.front().second, piv, pv);
            if (!rj.ent.empty() && rj.ent.front().first == col)
                throw std::logic_error("eliminate: pivot column survived");
            push(std::move(rj));
        }
        ech.pivot_cols.push_back(col);
        ech.pivot_rows.push_back(std::move(piv));
    }
    return ech;
}

std::vector<IntRow> to_int_rows(const SparseSystem& s, PivotOrder order) {
    std::vector<IntRow> rows;
    rows.reserve(s.rows.size());
    for (size_t i = 0; i < s.rows.size(); ++i) {
        if (order == PivotOrder::Forward) {
            rows.push_back(scale_row(s.rows[i], Rational(0), static_cast<int>(i)));
        } else {
            // mirror columns and reverse row preference
            std::vector<std::pair<int, Rational>> mirrored;
            mirrored.reserve(s.rows[i].size());
            for (const auto& [c, v] : s.rows[i]) mirrored.emplace_back(s.cols - 1 - c, v);
            rows.push_back(scale_row(mirrored, Rational(0), -static_cast<int>(i)));
        }
    }
    return rows;
}

Rational rational_of(const mpz_class& z) {
    return rational_from_mpq(mpq_class(z));
}

// Solve for the pivot unknowns given fixed values of the free unknowns.
// Pivot rows are processed right to left.
void back_substitute(const Echelon& ech, std::vector<Rational>& x) {
    for (size_t k = ech.pivot_rows.size(); k-- > 0;) {
        const IntRow& row = ech.pivot_rows[k];
        int pc = ech.pivot_cols[k];
        Rational acc = rational_of(row.rhs);
        for (size_t t = 1; t < row.ent.size(); ++t) {
            const auto& [c, v] = row.ent[t];
            if (!x[static_cast<size_t>(c)].is_zero()) acc -= rational_of(v) * x[static_cast<size_t>(c)];
        }
        x[static_cast<size_t>(pc)] = acc / rational_of(row.ent.front().second);
    }
}

void normalize_primitive(std::vector<Rational>& v) {
    mpz_class l = 1;
    for (const auto& c : v)
        if (!c.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.raw().get_den().get_mpz_t());
    mpz_class g = 0;
    std::vector<mpz_class> ints(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        ints[i] = v[i].raw().get_num() * (l / v[i].raw().get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (g == 0) return;
    int lead_sign = 0;
    for (const auto& z : ints) {
        if (z != 0) {
            lead_sign = sgn(z);
            break;
        }
    }
    if (lead_sign < 0) g = -g;
    for (size_t i = 0; i < v.size(); ++i) v[i] = rational_of(ints[i] / g);
}

}  // namespace

std::vector<std::vector<Rational>> exact_nullspace(const SparseSystem& s, PivotOrder order) {
    Echelon ech = eliminate(to_int_rows(s, order), s.cols);
    std::vector<bool> is_pivot(static_cast<size_t>(s.cols), false);
    for (int c : ech.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < s.cols; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        std::vector<Rational> x(static_cast<size_t>(s.cols));
        x[static_cast<size_t>(f)] = Rational(1);
        back_substitute(ech, x);
        if (order == PivotOrder::Reverse) {
            std::reverse(x.begin(), x.end());
        }
        normalize_primitive(x);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<std::vector<Rational>> exact_nullspace(const Matrix& m, PivotOrder order) {
    SparseSystem s;
    s.cols = m.cols();
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<std::pair<int, Rational>> row;
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) row.emplace_back(j, m.at(i, j));
        s.add_row(std::move(row));
    }
    return exact_nullspace(s, order);
}

long exact_rank(const SparseSystem& s, PivotOrder order) {
    Echelon ech = eliminate(to_int_rows(s, order), s.cols);
    return static_cast<long>(ech.pivot_cols.size());
}

std::optional<std::vector<Rational>> exact_solve(const SparseSystem& a, const std::vector<Rational>& rhs) {
    if (rhs.size() != a.rows.size()) throw std::invalid_argument("exact_solve: rhs size mismatch");
    std::vector<IntRow> rows;
    rows.reserve(a.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) rows.push_back(scale_row(a.rows[i], rhs[i], static_cast<int>(i)));
    Echelon ech = eliminate(std::move(rows), a.cols);
    for (const auto& z : ech.zero_rows)
        if (z.rhs != 0) return std::nullopt;
    std::vector<Rational> x(static_cast<size_t>(a.cols));
    back_substitute(ech, x);
    return x;
}

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t(1) << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

}  // namespace

long nullity_mod_p(const SparseSystem& s) {
    using Row = std::vector<std::pair<int, std::uint64_t>>;
    std::map<int, std::vector<Row>> pending;
    auto push = [&](Row&& r) {
        if (!r.empty()) pending[r.front().first].push_back(std::move(r));
    };
    for (const auto& row : s.rows) {
        Row r;
        r.reserve(row.size());
        for (const auto& [c, v] : row) {
            std::uint64_t x = v.mod_p(kPrime);
            if (x) r.emplace_back(c, x);
        }
        push(std::move(r));
    }
    long rank = 0;
    while (!pending.empty()) {
        auto it = pending.begin();
        std::vector<Row> bucket = std::move(it->second);
        pending.erase(it);
        Row piv = std::move(bucket.front());
        ++rank;
        std::uint64_t pv = piv.front().second;
        for (size_t j = 1; j < bucket.size(); ++j) {
            Row& rj = bucket[j];
            std::uint64_t cj = rj.front().second;
            Row out;
            out.reserve(rj.size() + piv.size());
            size_t a = 0, b = 0;
            while (a < rj.size() || b < piv.size()) {
                if (b == piv.size() || (a < rj.size() && rj[a].first < piv[b].first)) {
                    out.emplace_back(rj[a].first, mulmod(rj[a].second, pv));
                    ++a;
                } else if (a == rj.size() || piv[b].first < rj[a].first) {
                    out.emplace_back(piv[b].first, mulmod(kPrime - cj, piv[b].second));
                    ++b;
                } else {
                    std::uint64_t v = (mulmod(rj[a].second, pv) + mulmod(kPrime - cj, piv[b].second)) % kPrime;
                    if (v) out.emplace_back(rj[a].first, v);
                    ++a;
                    ++b;
                }
            }
            push(std::move(out));
        }
    }
    return s.cols - rank;
}

}  // namespace confsym
