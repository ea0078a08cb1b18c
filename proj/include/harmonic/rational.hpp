#pragma once

#include <gmpxx.h>

#include <string>

namespace harmonic {

// Exact arbitrary-precision scalars. mpq_class keeps fractions canonical
// (gcd 1, positive denominator), which is exactly the invariant we need.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace harmonic
