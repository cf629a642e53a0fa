// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/tensor.hpp"

namespace confsym {

PolyField euclidean_trace(const PolyField& t, int slot_a, int slot_b) {
    if (slot_a == slot_b || slot_a >= t.rank() || slot_b >= t.rank())
        throw std::invalid_argument("euclidean_trace: bad slots");
    const int n = t.dim();
    std::vector<Variance> shape;
    for (int k = 0; k < t.rank(); ++k)
        if (k != slot_a && k != slot_b) shape.push_back(t.shape()[static_cast<size_t>(k)]);
    PolyField out(n, shape, SymTag::None, t.weight(), Poly(n));
    out.for_each_index([&](const std::vector<int>& idx, size_t flat) {
        Poly sum(n);
        for (int d = 0; d < n; ++d) {
            std::vector<int> full(static_cast<size_t>(t.rank()));
            size_t src = 0;
            for (int k = 0; k < t.rank(); ++k) {
                if (k == slot_a || k == slot_b)
                    full[static_cast<size_t>(k)] = d;
                else
                    full[static_cast<size_t>(k)] = idx[src++];
            }
            sum += t.at(full);
        }
        out.components()[flat] = sum;
    });
    return out;
}

bool flat_tag_consistent(const PolyField& t) {
    switch (t.sym()) {
        case SymTag::None:
            return true;
        case SymTag::Symmetric:
        case SymTag::SymmetricTraceFree: {
            if (t.rank() < 2) return false;
            PolyField s = symmetrized(t);
            for (size_t i = 0; i < s.components().size(); ++i)
                if (s.components()[i] != t.components()[i]) return false;
            if (t.sym() == SymTag::SymmetricTraceFree) {
                PolyField tr = euclidean_trace(t, 0, 1);
                if (!tr.is_zero()) return false;
            }
            return true;
        }
        case SymTag::Skew: {
            if (t.rank() < 2) return false;
            // check antisymmetry under each adjacent transposition
            for (int k = 0; k + 1 < t.rank(); ++k) {
                bool ok = true;
                t.for_each_index([&](const std::vector<int>& idx, size_t flat) {
                    std::vector<int> swapped = idx;
                    std::swap(swapped[static_cast<size_t>(k)], swapped[static_cast<size_t>(k) + 1]);
                    if (t.components()[flat] != -t.at(swapped)) ok = false;
                });
                if (!ok) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace confsym
