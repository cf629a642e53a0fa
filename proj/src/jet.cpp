// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/jet.hpp"

#include <sstream>

namespace confsym {

static const Rational kZero{};

Jet::Jet(int n, int order, std::vector<Rational> base) : n_(n), order_(order), base_(std::move(base)) {
    if (static_cast<int>(base_.size()) != n_) throw std::invalid_argument("Jet: base point dimension mismatch");
    if (order_ < 0) throw std::invalid_argument("Jet: negative order");
}

Jet Jet::constant(int n, int order, const std::vector<Rational>& base, const Rational& c) {
    Jet j(n, order, base);
    j.add_term(MultiIndex(n), c);
    return j;
}

Jet Jet::from_poly(const Poly& p, const std::vector<Rational>& base, int order) {
    if (p.dim() != static_cast<int>(base.size())) throw std::invalid_argument("Jet::from_poly: dimension mismatch");
    Jet j(p.dim(), order, base);
    // Taylor coefficient at alpha is d^alpha p (base) / alpha!
    for (const auto& m : multi_indices_up_to_degree(p.dim(), order)) {
        Rational c = p.diff_multi(m).eval(base);
        if (c.is_zero()) continue;
        j.coeffs_.emplace(m, c / Rational(multi_factorial(m)));
    }
    return j;
}

const Rational& Jet::coeff(const MultiIndex& m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? kZero : it->second;
}

void Jet::add_term(const MultiIndex& m, const Rational& c) {
    if (c.is_zero() || m.degree() > order_) return;
    auto [it, inserted] = coeffs_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

void Jet::check_compatible(const Jet& o) const {
    if (n_ != o.n_ || base_ != o.base_) throw std::invalid_argument("Jet: base point mismatch");
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& [m, c] : r.coeffs_) c = -c;
    return r;
}

Jet operator+(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    Jet r(a.n_, std::min(a.order_, b.order_), a.base_);
    for (const auto& [m, c] : a.coeffs_) r.add_term(m, c);
    for (const auto& [m, c] : b.coeffs_) r.add_term(m, c);
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    Jet r(a.n_, std::min(a.order_, b.order_), a.base_);
    for (const auto& [m, c] : a.coeffs_) r.add_term(m, c);
    for (const auto& [m, c] : b.coeffs_) r.add_term(m, -c);
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    Jet r(a.n_, std::min(a.order_, b.order_), a.base_);
    for (const auto& [ma, ca] : a.coeffs_) {
        if (ma.degree() > r.order_) break;
        for (const auto& [mb, cb] : b.coeffs_) {
            if (ma.degree() + mb.degree() > r.order_) continue;
            r.add_term(ma + mb, ca * cb);
        }
    }
    return r;
}

Jet operator*(const Rational& c, Jet a) {
    if (c.is_zero()) return Jet(a.n_, a.order_, a.base_);
    for (auto& [m, v] : a.coeffs_) v *= c;
    return a;
}

Jet Jet::reciprocal() const {
    Rational v0 = value_at_base();
    if (v0.is_zero()) throw std::domain_error("Jet: division by jet vanishing at base point");
    // 1/(v0 (1+u)) = (1/v0) sum (-u)^k with u = this/v0 - 1 nilpotent to order_
    Jet u = (Rational(1) / v0) * *this;
    u.add_term(MultiIndex(n_), Rational(-1));
    Jet sum = Jet::constant(n_, order_, base_, Rational(1));
    Jet upow = Jet::constant(n_, order_, base_, Rational(1));
    for (int k = 1; k <= order_; ++k) {
        upow = upow * u;
        if (upow.is_zero()) break;
        sum = (k % 2 == 1) ? sum - upow : sum + upow;
    }
    return (Rational(1) / v0) * sum;
}

Jet operator/(const Jet& a, const Jet& b) {
    return a * b.reciprocal();
}

Jet Jet::pow_rational(const Rational& w) const {
    if (value_at_base() != Rational(1))
        throw std::domain_error("Jet::pow_rational: value at base point must be 1");
    if (w.is_zero()) return Jet::constant(n_, order_, base_, Rational(1));
    Jet u = *this;
    u.add_term(MultiIndex(n_), Rational(-1));  // u = a - 1, vanishes at base
    Jet sum = Jet::constant(n_, order_, base_, Rational(1));
    Jet upow = Jet::constant(n_, order_, base_, Rational(1));
    for (int k = 1; k <= order_; ++k) {
        upow = upow * u;
        if (upow.is_zero()) break;
        sum = sum + rational_binomial(w, static_cast<unsigned>(k)) * upow;
    }
    return sum;
}

Jet Jet::diff(int i) const {
    if (i < 1 || i > n_) throw std::out_of_range("Jet::diff: index out of range");
    if (order_ < 1) throw std::domain_error("Jet::diff: valid order exhausted");
    Jet r(n_, order_ - 1, base_);
    for (const auto& [m, c] : coeffs_) {
        int e = m[i];
        if (e == 0) continue;
        r.add_term(m.minus(i), Rational(e) * c);
    }
    return r;
}

bool same_to_shared_order(const Jet& a, const Jet& b) {
    return (a - b).is_zero();
}

bool operator==(const Jet& a, const Jet& b) {
    return a.n_ == b.n_ && a.order_ == b.order_ && a.base_ == b.base_ && a.coeffs_ == b.coeffs_;
}

std::string Jet::str() const {
    std::ostringstream os;
    os << "[order " << order_ << "] ";
    if (coeffs_.empty()) {
        os << "0";
        return os.str();
    }
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.str();
        for (int i = 1; i <= n_; ++i) {
            if ((*it).first[i] == 0) continue;
            os << "*u" << i;
            if (it->first[i] > 1) os << "^" << it->first[i];
        }
    }
    return os.str();
}

}  // namespace confsym
