// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_RATIONAL_HPP
#define CONFSYM_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace confsym {

/// Arbitrary-precision rational number, always kept in canonical form
/// (p/q with q > 0 and gcd(p, q) = 1). Every operation is exact.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long num) : v_(num) {}
    Rational(long num, long den);

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on bad input.
    static Rational parse(const std::string& text);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// Numerator as a signed long; throws if it does not fit.
    long num_as_long() const;
    long den_as_long() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    /// Integer power, negative exponents allowed for nonzero values.
    Rational pow_int(long k) const;

    /// "p" when integral, "p/q" otherwise.
    std::string str() const;

    const mpq_class& raw() const { return v_; }

    /// Residue num * den^{-1} mod p (p prime, den not divisible by p).
    std::uint64_t mod_p(std::uint64_t p) const;

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;

    friend Rational rational_from_mpq(mpq_class v);
};

inline Rational rational_from_mpq(mpq_class v) {
    v.canonicalize();
    return Rational(std::move(v));
}

/// Generalized binomial coefficient binom(w, k) for rational w.
Rational rational_binomial(const Rational& w, unsigned k);

}  // namespace confsym

#endif
