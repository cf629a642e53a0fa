// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/multi_index.hpp"

#include <algorithm>

namespace confsym {

static void enumerate(int n, int var, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (var == n) {
        cur.set(n, remaining);
        out.push_back(cur);
        cur.set(n, 0);
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur.set(var, k);
        enumerate(n, var + 1, remaining - k, cur, out);
        cur.set(var, 0);
    }
}

std::vector<MultiIndex> multi_indices_of_degree(int n, int d) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    enumerate(n, 1, d, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> multi_indices_up_to_degree(int n, int d) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= d; ++k) {
        auto part = multi_indices_of_degree(n, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

long homogeneous_count(int n, int d) {
    // C(n+d-1, d)
    long r = 1;
    for (int i = 1; i <= d; ++i) r = r * (n + i - 1) / i;
    return r;
}

long multi_binomial(const MultiIndex& a, const MultiIndex& g) {
    long r = 1;
    for (int i = 1; i <= a.n; ++i) {
        int ai = a[i], gi = g[i];
        if (gi > ai) return 0;
        long c = 1;
        for (int k = 1; k <= gi; ++k) c = c * (ai - gi + k) / k;
        r *= c;
    }
    return r;
}

long multi_factorial(const MultiIndex& a) {
    long r = 1;
    for (int i = 1; i <= a.n; ++i)
        for (int k = 2; k <= a[i]; ++k) r *= k;
    return r;
}

}  // namespace confsym
