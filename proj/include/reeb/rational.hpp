#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace reeb {

// Exact rational coefficient type. All algebraic ranks in this project are
// ranks over Q, so floating point is never allowed on this side of the code.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_from_strings(const std::string& num, const std::string& den) {
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace reeb
