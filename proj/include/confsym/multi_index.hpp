// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_MULTI_INDEX_HPP
#define CONFSYM_MULTI_INDEX_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace confsym {

constexpr int kMaxDim = 8;

/// Exponent tuple (e1..en) indexing monomials and partial derivatives.
/// Ordered graded-lexicographically: total degree first, then lex with x1
/// most significant.
struct MultiIndex {
    std::uint8_t n = 0;
    std::uint8_t deg = 0;
    std::array<std::uint8_t, kMaxDim> e{};

    MultiIndex() = default;

    explicit MultiIndex(int dim) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("MultiIndex: bad dimension");
        n = static_cast<std::uint8_t>(dim);
    }

    MultiIndex(int dim, std::initializer_list<int> exps) : MultiIndex(dim) {
        int i = 0;
        for (int v : exps) set(i++ + 1, v);
    }

    int operator[](int var) const { return e[static_cast<size_t>(var - 1)]; }  // var is 1-based

    void set(int var, int value) {
        if (var < 1 || var > n) throw std::out_of_range("MultiIndex: variable out of range");
        deg = static_cast<std::uint8_t>(deg - e[static_cast<size_t>(var - 1)] + value);
        e[static_cast<size_t>(var - 1)] = static_cast<std::uint8_t>(value);
    }

    int degree() const { return deg; }

    MultiIndex plus(int var, int amount = 1) const {
        MultiIndex r = *this;
        r.set(var, (*this)[var] + amount);
        return r;
    }

    MultiIndex minus(int var, int amount = 1) const {
        MultiIndex r = *this;
        r.set(var, (*this)[var] - amount);
        return r;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r = a;
        for (int i = 0; i < a.n; ++i) r.e[static_cast<size_t>(i)] = static_cast<std::uint8_t>(a.e[static_cast<size_t>(i)] + b.e[static_cast<size_t>(i)]);
        r.deg = static_cast<std::uint8_t>(a.deg + b.deg);
        return r;
    }

    /// Componentwise a - b; valid only when b <= a componentwise.
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r = a;
        for (int i = 0; i < a.n; ++i) r.e[static_cast<size_t>(i)] = static_cast<std::uint8_t>(a.e[static_cast<size_t>(i)] - b.e[static_cast<size_t>(i)]);
        r.deg = static_cast<std::uint8_t>(a.deg - b.deg);
        return r;
    }

    bool contains(const MultiIndex& b) const {
        for (int i = 0; i < n; ++i)
            if (e[static_cast<size_t>(i)] < b.e[static_cast<size_t>(i)]) return false;
        return true;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        if (a.n != b.n || a.deg != b.deg) return false;
        for (int i = 0; i < a.n; ++i)
            if (a.e[static_cast<size_t>(i)] != b.e[static_cast<size_t>(i)]) return false;
        return true;
    }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

    /// Graded-lex: lower degree first; within a degree, a higher power of an
    /// earlier variable ranks higher, so x1^2 > x1 x2 > x2^2.
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        for (int i = 0; i < a.n; ++i) {
            if (a.e[static_cast<size_t>(i)] != b.e[static_cast<size_t>(i)])
                return a.e[static_cast<size_t>(i)] < b.e[static_cast<size_t>(i)];
        }
        return false;
    }
};

/// All multi-indices of dimension n with total degree exactly d, grlex order.
std::vector<MultiIndex> multi_indices_of_degree(int n, int d);

/// All multi-indices of dimension n with total degree <= d, grlex order.
std::vector<MultiIndex> multi_indices_up_to_degree(int n, int d);

/// Number of monomials of degree exactly d in n variables.
long homogeneous_count(int n, int d);

/// Product of componentwise binomial coefficients, as a long (small inputs).
long multi_binomial(const MultiIndex& a, const MultiIndex& g);

/// alpha! = prod_i e_i!
long multi_factorial(const MultiIndex& a);

}  // namespace confsym

#endif
