// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/diff_op.hpp"

#include <sstream>

namespace confsym {

DiffOp DiffOp::identity(int n) {
    DiffOp d(n);
    d.add_term(MultiIndex(n), Poly::constant(n, Rational(1)));
    return d;
}

DiffOp DiffOp::partial(int n, int i) {
    DiffOp d(n);
    d.add_term(MultiIndex(n).plus(i), Poly::constant(n, Rational(1)));
    return d;
}

DiffOp DiffOp::multiplication(const Poly& p) {
    DiffOp d(p.dim());
    d.add_term(MultiIndex(p.dim()), p);
    return d;
}

DiffOp DiffOp::laplacian(int n) {
    DiffOp d(n);
    for (int i = 1; i <= n; ++i) d.add_term(MultiIndex(n).plus(i, 2), Poly::constant(n, Rational(1)));
    return d;
}

int DiffOp::order() const {
    int o = -1;
    for (const auto& [b, c] : terms_) o = std::max(o, b.degree());
    return o;
}

int DiffOp::max_coeff_degree() const {
    int d = -1;
    for (const auto& [b, c] : terms_) d = std::max(d, c.degree());
    return d;
}

void DiffOp::add_term(const MultiIndex& beta, const Poly& coeff) {
    if (coeff.is_zero()) return;
    if (coeff.dim() != n_) throw std::invalid_argument("DiffOp: coefficient dimension mismatch");
    auto [it, inserted] = terms_.emplace(beta, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly DiffOp::apply(const Poly& f) const {
    if (f.dim() != n_) throw std::invalid_argument("DiffOp::apply: dimension mismatch");
    Poly out(n_);
    for (const auto& [b, c] : terms_) out += c * f.diff_multi(b);
    return out;
}

DiffOp DiffOp::operator-() const {
    DiffOp r(n_);
    for (const auto& [b, c] : terms_) r.terms_.emplace(b, -c);
    return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    if (n_ != o.n_) throw std::invalid_argument("DiffOp: dimension mismatch");
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    if (n_ != o.n_) throw std::invalid_argument("DiffOp: dimension mismatch");
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
}

DiffOp operator*(const Rational& c, DiffOp a) {
    DiffOp r(a.n_);
    for (const auto& [b, p] : a.terms_) r.add_term(b, c * p);
    return r;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("compose: dimension mismatch");
    const int n = a.dim();
    DiffOp r(n);
    for (const auto& [alpha, ca] : a.terms()) {
        for (const auto& [beta, cb] : b.terms()) {
            // gamma runs over sub-indices of alpha
            for (const auto& gamma : multi_indices_up_to_degree(n, alpha.degree())) {
                if (!alpha.contains(gamma)) continue;
                Poly db = cb.diff_multi(gamma);
                if (db.is_zero()) continue;
                Rational binom(multi_binomial(alpha, gamma));
                r.add_term(alpha - gamma + beta, binom * (ca * db));
            }
        }
    }
    return r;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) {
    return compose(a, b) - compose(b, a);
}

std::string DiffOp::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [b, c] = *it;
        if (!first) os << " + ";
        first = false;
        bool unit_coeff = c == Poly::constant(n_, Rational(1)) && b.degree() > 0;
        bool paren = c.terms().size() > 1;
        bool printed_coeff = false;
        if (!unit_coeff) {
            os << (paren ? "(" : "") << c.str() << (paren ? ")" : "");
            printed_coeff = true;
        }
        for (int i = 1; i <= n_; ++i) {
            if (b[i] == 0) continue;
            if (printed_coeff) os << "*";
            printed_coeff = true;
            os << "d" << i;
            if (b[i] > 1) os << "^" << b[i];
        }
    }
    return os.str();
}

}  // namespace confsym
