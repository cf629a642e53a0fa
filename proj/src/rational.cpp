// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/rational.hpp"

namespace confsym {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty literal");
    auto digits_ok = [](const std::string& s, size_t from) {
        if (from >= s.size()) return false;
        for (size_t i = from; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    size_t slash = text.find('/');
    std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    size_t num_start = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? 1 : 0;
    if (!digits_ok(num, num_start) || !digits_ok(den, 0))
        throw std::invalid_argument("Rational: malformed literal '" + text + "'");
    mpz_class num_z(num), den_z(den);
    if (den_z == 0) throw std::invalid_argument("Rational: zero denominator");
    mpq_class v(num_z, den_z);
    v.canonicalize();
    return Rational(std::move(v));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

long Rational::num_as_long() const {
    if (!v_.get_num().fits_slong_p()) throw std::overflow_error("Rational: numerator too large");
    return v_.get_num().get_si();
}

long Rational::den_as_long() const {
    if (!v_.get_den().fits_slong_p()) throw std::overflow_error("Rational: denominator too large");
    return v_.get_den().get_si();
}

Rational Rational::pow_int(long k) const {
    if (k == 0) return Rational(1);
    if (is_zero() && k < 0) throw std::domain_error("Rational: 0 to negative power");
    mpq_class base = k > 0 ? v_ : mpq_class(1 / v_);
    unsigned long e = static_cast<unsigned long>(k > 0 ? k : -k);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    return rational_from_mpq(mpq_class(num, den));
}

std::string Rational::str() const {
    return v_.get_str();
}

std::uint64_t Rational::mod_p(std::uint64_t p) const {
    mpz_class num = v_.get_num() % mpz_class(static_cast<unsigned long>(p));
    mpz_class den = v_.get_den() % mpz_class(static_cast<unsigned long>(p));
    std::uint64_t n = num.get_ui();
    if (sgn(num) < 0) n = p - n;
    std::uint64_t d = den.get_ui();
    if (d == 0) throw std::domain_error("Rational: denominator divisible by p");
    // d^(p-2) mod p by binary exponentiation
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    };
    std::uint64_t inv = 1, base = d, e = p - 2;
    while (e) {
        if (e & 1) inv = mulmod(inv, base);
        base = mulmod(base, base);
        e >>= 1;
    }
    return mulmod(n % p, inv);
}

Rational rational_binomial(const Rational& w, unsigned k) {
    Rational result(1);
    for (unsigned i = 0; i < k; ++i) {
        result *= (w - Rational(static_cast<long>(i)));
        result /= Rational(static_cast<long>(i) + 1);
    }
    return result;
}

}  // namespace confsym
