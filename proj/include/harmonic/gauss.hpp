#pragma once

#include <string>

#include "harmonic/log_basis.hpp"

namespace harmonic {

// Identifies the harmonic number H_{a/q}. Always stored in lowest terms
// with q >= 1; q = 1 is the integer case H_n, n >= 1. Any other (a, q)
// with gcd(a, q) = 1 is allowed, negative a included (values below every
// pole are reached through the recurrence, never across one).
class HarmonicIndex {
  public:
    HarmonicIndex(const Integer& a, const Integer& q);
    HarmonicIndex(long a, long q) : HarmonicIndex(Integer(a), Integer(q)) {}

    // Strict "a/q" with optional leading sign; no whitespace.
    static HarmonicIndex parse(const std::string& text);

    const Integer& a() const { return a_; }
    const Integer& q() const { return q_; }
    Rational value() const { return Rational(a_, q_); }
    bool is_integer() const { return q_ == 1; }

    std::string to_string() const;

    friend bool operator==(const HarmonicIndex& x, const HarmonicIndex& y) {
        return x.a_ == y.a_ && x.q_ == y.q_;
    }
    friend bool operator<(const HarmonicIndex& x, const HarmonicIndex& y) {
        return x.value() < y.value();
    }

  private:
    Integer a_;
    Integer q_;
};

// H_0 = 0, H_n = 1 + 1/2 + ... + 1/n, exact.
Rational harmonic_integer(unsigned long n);

// Exact decomposition of H_{a/q} over the canonical atoms:
//   H_{a/q} = (q/a) - log(2q) - (pi/2) cot(pi a/q)
//             + 2 sum_{n=1}^{floor((q-1)/2)} cos(2 pi n a/q) log sin(pi n/q)
// for 1 <= a <= q-1, extended to all a by H_r = H_{r-1} + 1/r.
// q = 1 gives the exact rational; q = 2 uses the closed form 2 - 2 log 2.
// conductor_cap = 0 means the default 4*q.
SymbolicValue harmonic_symbolic(const HarmonicIndex& idx,
                                unsigned conductor_cap = 0);

// H_r - H_{1-r} - 1/r - 1/(r-1) + pi cot(pi r), assembled symbolically.
// The reflection identity says this is exactly zero.
SymbolicValue reflection_residual(const HarmonicIndex& idx,
                                  unsigned conductor_cap = 0);

}  // namespace harmonic
