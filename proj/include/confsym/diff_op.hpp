// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_DIFF_OP_HPP
#define CONFSYM_DIFF_OP_HPP

#include <map>
#include <string>

#include "confsym/poly.hpp"

namespace confsym {

/// Polynomial-coefficient differential operator on R^n in normal order:
/// sum_beta c_beta(x) d^beta with every coefficient written to the left of
/// the derivatives. The normal form is unique, so is_zero() decides operator
/// identities outright.
class DiffOp {
public:
    DiffOp() : n_(1) {}
    explicit DiffOp(int n) : n_(n) {}

    static DiffOp identity(int n);
    static DiffOp partial(int n, int i);               // d/dx_i
    static DiffOp multiplication(const Poly& p);       // f -> p f
    static DiffOp laplacian(int n);                    // sum_i d_i^2

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const;                                 // max |beta|, -1 when zero
    int max_coeff_degree() const;

    const std::map<MultiIndex, Poly>& terms() const { return terms_; }
    void add_term(const MultiIndex& beta, const Poly& coeff);

    Poly apply(const Poly& f) const;

    DiffOp operator-() const;
    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator*(const Rational& c, DiffOp a);

    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    /// Normal-ordered product: (a d^alpha)(b d^beta) expands by Leibniz into
    /// sum_{gamma <= alpha} binom(alpha, gamma) a (d^gamma b) d^{alpha-gamma+beta}.
    friend DiffOp compose(const DiffOp& a, const DiffOp& b);
    friend DiffOp commutator(const DiffOp& a, const DiffOp& b);

    /// Deterministic rendering; derivatives print as d1, d2^2, ...
    std::string str() const;

private:
    int n_;
    std::map<MultiIndex, Poly> terms_;
};

}  // namespace confsym

#endif
