// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_RANDOMGEN_HPP
#define CONFSYM_RANDOMGEN_HPP

#include <cstdint>

#include "confsym/geometry.hpp"

namespace confsym {

/// Deterministic splitmix64 stream; every randomized check records its seed.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Coefficients drawn from {-3..3}/{1..3}.
    Rational coeff() { return Rational(range(-3, 3), range(1, 3)); }
};

/// Random polynomial of degree <= max_degree; terms are kept sparse. When
/// zero_constant is set the value at the origin is forced to zero.
Poly random_poly(Rng& rng, int n, int max_degree, bool zero_constant);

/// delta_ab plus a symmetric polynomial perturbation vanishing at the origin,
/// so the metric is invertible at the base point.
MetricJet random_metric(Rng& rng, int n, int order);

/// 1 + (polynomial vanishing at the origin), as required for rescalings.
Jet random_conformal_factor(Rng& rng, int n, int order);

JetField random_scalar_density(Rng& rng, int n, int order, const Rational& w);
JetField random_vector_field(Rng& rng, int n, int order, const Rational& w);
JetField random_oneform_field(Rng& rng, int n, int order, const Rational& w);

/// Random symmetric valence-2 upper field made trace-free with respect to
/// the metric of the cache.
JetField random_stf2_field(Rng& rng, const GeometryCache& c, const Rational& w);

/// Random symmetric Gamma_ab^c used for connection-independence properties.
PolyField random_symmetric_gamma(Rng& rng, int n, int max_degree);

}  // namespace confsym

#endif
