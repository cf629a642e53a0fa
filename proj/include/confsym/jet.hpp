// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_JET_HPP
#define CONFSYM_JET_HPP

#include <map>
#include <string>
#include <vector>

#include "confsym/poly.hpp"

namespace confsym {

/// Truncated Taylor expansion of a function at a rational base point.
///
/// Coefficients are stored against monomials in the displacement u = x - p
/// and only up to the jet's valid order. The valid order is bookkept through
/// every operation: arithmetic takes the min of the operand orders and each
/// differentiation costs one order. A comparison "to valid order" of two jets
/// therefore states exactly how many Taylor coefficients were checked.
class Jet {
public:
    Jet() : n_(1), order_(0), base_(1) {}
    Jet(int n, int order, std::vector<Rational> base);

    static Jet constant(int n, int order, const std::vector<Rational>& base, const Rational& c);
    static Jet from_poly(const Poly& p, const std::vector<Rational>& base, int order);

    int dim() const { return n_; }
    int order() const { return order_; }
    const std::vector<Rational>& base() const { return base_; }

    bool is_zero() const { return coeffs_.empty(); }
    const Rational& coeff(const MultiIndex& m) const;
    void add_term(const MultiIndex& m, const Rational& c);  // drops degrees beyond order
    const std::map<MultiIndex, Rational>& coeffs() const { return coeffs_; }

    Rational value_at_base() const { return coeff(MultiIndex(n_)); }

    Jet operator-() const;
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(const Rational& c, Jet a);
    friend Jet operator/(const Jet& a, const Jet& b);  // requires b nonzero at base

    /// Truncated series for a^w with rational w; requires a(base) = 1 so all
    /// coefficients stay rational.
    Jet pow_rational(const Rational& w) const;

    /// Reciprocal via the truncated geometric series; requires nonzero value at base.
    Jet reciprocal() const;

    Jet diff(int i) const;  // valid order drops by one; throws when exhausted

    /// Equal as truncated expansions up to the smaller valid order.
    friend bool same_to_shared_order(const Jet& a, const Jet& b);

    friend bool operator==(const Jet& a, const Jet& b);
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    std::string str() const;

private:
    void check_compatible(const Jet& o) const;
    int n_;
    int order_;
    std::vector<Rational> base_;
    std::map<MultiIndex, Rational> coeffs_;
};

}  // namespace confsym

#endif
