// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_TENSOR_HPP
#define CONFSYM_TENSOR_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "confsym/jet.hpp"
#include "confsym/poly.hpp"
#include "confsym/rational.hpp"

namespace confsym {

enum class Variance { Up, Down };
enum class SymTag { None, Symmetric, SymmetricTraceFree, Skew };

/// Tensor field with a conformal weight. Components are either polynomials
/// (flat backgrounds) or jets (curved backgrounds); all n^rank components are
/// stored densely, with the symmetry tag as validated metadata. Index values
/// are 0-based; coordinate x_{a+1} corresponds to index value a.
template <class V>
class TensorField {
public:
    TensorField(int n, std::vector<Variance> shape, SymTag sym, Rational weight, const V& zero)
        : n_(n), shape_(std::move(shape)), sym_(sym), weight_(std::move(weight)) {
        size_t count = 1;
        for (size_t i = 0; i < shape_.size(); ++i) count *= static_cast<size_t>(n_);
        comp_.assign(count, zero);
    }

    int dim() const { return n_; }
    int rank() const { return static_cast<int>(shape_.size()); }
    const std::vector<Variance>& shape() const { return shape_; }
    SymTag sym() const { return sym_; }
    void set_sym(SymTag s) { sym_ = s; }
    const Rational& weight() const { return weight_; }
    void set_weight(Rational w) { weight_ = std::move(w); }

    size_t flat_index(const std::vector<int>& idx) const {
        size_t f = 0;
        for (size_t k = 0; k < idx.size(); ++k) f = f * static_cast<size_t>(n_) + static_cast<size_t>(idx[k]);
        return f;
    }

    V& at(const std::vector<int>& idx) { return comp_[flat_index(idx)]; }
    const V& at(const std::vector<int>& idx) const { return comp_[flat_index(idx)]; }

    V& scalar() { return comp_.front(); }
    const V& scalar() const { return comp_.front(); }

    std::vector<V>& components() { return comp_; }
    const std::vector<V>& components() const { return comp_; }

    /// Iterates all index tuples in row-major order.
    template <class F>
    void for_each_index(F&& f) const {
        std::vector<int> idx(static_cast<size_t>(rank()), 0);
        size_t total = comp_.size();
        for (size_t flat = 0; flat < total; ++flat) {
            f(idx, flat);
            for (int k = rank() - 1; k >= 0; --k) {
                if (++idx[static_cast<size_t>(k)] < n_) break;
                idx[static_cast<size_t>(k)] = 0;
            }
        }
    }

    TensorField operator-() const {
        TensorField r = *this;
        for (auto& c : r.comp_) c = -c;
        return r;
    }
    TensorField& operator+=(const TensorField& o) {
        check_same(o);
        for (size_t i = 0; i < comp_.size(); ++i) comp_[i] = comp_[i] + o.comp_[i];
        return *this;
    }
    TensorField& operator-=(const TensorField& o) {
        check_same(o);
        for (size_t i = 0; i < comp_.size(); ++i) comp_[i] = comp_[i] - o.comp_[i];
        return *this;
    }
    friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
    friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
    friend TensorField operator*(const Rational& c, TensorField t) {
        for (auto& v : t.comp_) v = c * v;
        return t;
    }

    bool is_zero() const {
        return std::all_of(comp_.begin(), comp_.end(), [](const V& c) { return c.is_zero(); });
    }

    friend bool operator==(const TensorField& a, const TensorField& b) {
        return a.n_ == b.n_ && a.shape_ == b.shape_ && a.weight_ == b.weight_ && a.comp_ == b.comp_;
    }
    friend bool operator!=(const TensorField& a, const TensorField& b) { return !(a == b); }

private:
    void check_same(const TensorField& o) const {
        if (n_ != o.n_ || shape_ != o.shape_) throw std::invalid_argument("TensorField: shape mismatch");
    }

    int n_;
    std::vector<Variance> shape_;
    SymTag sym_;
    Rational weight_;
    std::vector<V> comp_;
};

using PolyField = TensorField<Poly>;
using JetField = TensorField<Jet>;

inline PolyField make_poly_scalar(int n, const Poly& p, Rational weight = Rational(0)) {
    PolyField f(n, {}, SymTag::None, std::move(weight), Poly(n));
    f.scalar() = p;
    return f;
}

inline PolyField make_poly_vector(int n, const std::vector<Poly>& comps, Rational weight = Rational(0)) {
    PolyField f(n, {Variance::Up}, SymTag::None, std::move(weight), Poly(n));
    for (int a = 0; a < n; ++a) f.at({a}) = comps[static_cast<size_t>(a)];
    return f;
}

/// Averages a tensor over all permutations of its slots.
template <class V>
TensorField<V> symmetrized(const TensorField<V>& t) {
    std::vector<int> perm(static_cast<size_t>(t.rank()));
    std::iota(perm.begin(), perm.end(), 0);
    long count = 0;
    TensorField<V> acc = t;
    for (auto& c : acc.components()) c = Rational(0) * c;
    std::vector<int> src(static_cast<size_t>(t.rank()));
    do {
        ++count;
        acc.for_each_index([&](const std::vector<int>& idx, size_t flat) {
            for (size_t k = 0; k < idx.size(); ++k) src[static_cast<size_t>(perm[k])] = idx[k];
            acc.components()[flat] = acc.components()[flat] + t.at(src);
        });
    } while (std::next_permutation(perm.begin(), perm.end()));
    Rational inv(1, count);
    for (auto& c : acc.components()) c = inv * c;
    return acc;
}

/// Euclidean trace over two slots (flat backgrounds).
PolyField euclidean_trace(const PolyField& t, int slot_a, int slot_b);

/// Checks that stored components honor the declared symmetry tag; the
/// trace-free check uses the Euclidean metric.
bool flat_tag_consistent(const PolyField& t);

}  // namespace confsym

#endif
