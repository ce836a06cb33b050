#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace kdvlab {

// Exact arbitrary-precision rational scalar. All symbolic coefficients in the
// engine are carried as Rational; doubles appear only at the numeric boundary.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

// Canonical "p/q" form, denominator always printed and positive.
inline std::string rational_to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    Rational r;
    if (slash == std::string::npos) {
        r = Rational(mpz_class(s), 1);
    } else {
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("rational with zero denominator: " + s);
        r = Rational(num, den);
    }
    r.canonicalize();
    return r;
}

// gcd of two rationals: gcd of numerators over lcm of denominators, >= 0.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    mpz_class num, den;
    mpz_gcd(num.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    if (den == 0) den = 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace kdvlab
