// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_POLY_HPP
#define CONFSYM_POLY_HPP

#include <map>
#include <string>
#include <vector>

#include "confsym/multi_index.hpp"
#include "confsym/rational.hpp"

namespace confsym {

/// Sparse multivariate polynomial over the rationals in x1..xn.
/// Canonical form: grlex-ordered term map with no zero coefficients,
/// so equality is map equality and printing is deterministic.
class Poly {
public:
    Poly() : n_(1) {}
    explicit Poly(int n) : n_(n) {}

    static Poly constant(int n, const Rational& c);
    static Poly variable(int n, int i);  // x_i, 1-based

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }
    int degree() const;  // -1 for the zero polynomial

    const Rational& coeff(const MultiIndex& m) const;
    void set_coeff(const MultiIndex& m, const Rational& c);
    void add_term(const MultiIndex& m, const Rational& c);

    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& c, Poly p);

    friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly diff(int i) const;                    // d/dx_i
    Poly diff_multi(const MultiIndex& b) const;  // d^b, falling-factorial form
    Poly pow(unsigned k) const;

    Rational eval(const std::vector<Rational>& point) const;

    /// Deterministic rendering, highest grlex term first, e.g. "2*x1^2*x2 - 1/3".
    std::string str() const;

private:
    void check_dim(const Poly& o) const;
    int n_;
    std::map<MultiIndex, Rational> terms_;
};

}  // namespace confsym

#endif
