// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/poly.hpp"

#include <sstream>

namespace confsym {

static const Rational kZero{};

Poly Poly::constant(int n, const Rational& c) {
    Poly p(n);
    if (!c.is_zero()) p.terms_.emplace(MultiIndex(n), c);
    return p;
}

Poly Poly::variable(int n, int i) {
    Poly p(n);
    p.terms_.emplace(MultiIndex(n).plus(i), Rational(1));
    return p;
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
}

const Rational& Poly::coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? kZero : it->second;
}

void Poly::set_coeff(const MultiIndex& m, const Rational& c) {
    if (c.is_zero())
        terms_.erase(m);
    else
        terms_[m] = c;
}

void Poly::add_term(const MultiIndex& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Poly::check_dim(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Poly: dimension mismatch");
}

Poly Poly::operator-() const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_dim(b);
    Poly r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
    return r;
}

Poly operator*(const Rational& c, Poly p) {
    if (c.is_zero()) return Poly(p.n_);
    for (auto& [m, v] : p.terms_) v *= c;
    return p;
}

Poly Poly::diff(int i) const {
    if (i < 1 || i > n_) throw std::out_of_range("Poly::diff: index out of range");
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
        int e = m[i];
        if (e == 0) continue;
        r.terms_.emplace(m.minus(i), Rational(e) * c);
    }
    return r;
}

Poly Poly::diff_multi(const MultiIndex& b) const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
        if (!m.contains(b)) continue;
        long fall = 1;  // prod_i e_i (e_i-1) ... (e_i - b_i + 1)
        for (int i = 1; i <= n_; ++i)
            for (int k = 0; k < b[i]; ++k) fall *= m[i] - k;
        r.terms_.emplace(m - b, Rational(fall) * c);
    }
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r = Poly::constant(n_, Rational(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != n_) throw std::invalid_argument("Poly::eval: bad point");
    Rational total;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (int i = 1; i <= n_; ++i)
            for (int k = 0; k < m[i]; ++k) term *= point[static_cast<size_t>(i - 1)];
        total += term;
    }
    return total;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        bool has_vars = m.degree() > 0;
        if (!a.is_one() || !has_vars) {
            os << a.str();
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (int i = 1; i <= n_; ++i) {
            if (m[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << "x" << i;
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

}  // namespace confsym
