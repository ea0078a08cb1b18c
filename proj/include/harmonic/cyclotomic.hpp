#pragma once

#include <vector>

#include "harmonic/bigfloat.hpp"
#include "harmonic/errors.hpp"
#include "harmonic/rational.hpp"

namespace harmonic {

// An element of the cyclotomic field Q(zeta_N), stored as its coordinate
// vector over the power basis {zeta_N^i : 0 <= i < phi(N)} reduced modulo
// the N-th cyclotomic polynomial. The representation at a fixed conductor
// is unique, so equality at a common conductor is coefficient-wise.
//
// Values are immutable after construction and safe to share across threads;
// the per-conductor polynomial caches are mutex-guarded.
class CyclotomicNumber {
  public:
    // Zero at conductor 1.
    CyclotomicNumber();
    explicit CyclotomicNumber(const Rational& r);
    explicit CyclotomicNumber(long n) : CyclotomicNumber(Rational(n)) {}

    // zeta_N^power (power may be any integer; reduced mod N).
    static CyclotomicNumber root_of_unity(unsigned conductor, long power = 1);

    // Coordinates must have length phi(conductor) and be already reduced;
    // use this for deserialization.
    static CyclotomicNumber from_coords(unsigned conductor,
                                        std::vector<Rational> coords);

    unsigned conductor() const { return conductor_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    // True when the value lies in Q (all power-basis coordinates above the
    // constant one vanish).
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    // Same abstract number re-coordinatized in Q(zeta_target);
    // requires conductor() | target.
    CyclotomicNumber embed(unsigned target) const;

    // Image under complex conjugation zeta -> zeta^-1. Fixed points are
    // exactly the real elements.
    CyclotomicNumber conj() const;
    bool is_real() const { return *this == conj(); }

    CyclotomicNumber inverse() const;  // throws DivisionByZero on 0

    // Evaluate the power-basis expansion at zeta_N = exp(2*pi*i/N) with at
    // least `digits` correct decimal digits.
    BigComplex numeric_embed(unsigned digits) const;

    friend CyclotomicNumber operator+(const CyclotomicNumber& a,
                                      const CyclotomicNumber& b);
    friend CyclotomicNumber operator-(const CyclotomicNumber& a,
                                      const CyclotomicNumber& b);
    friend CyclotomicNumber operator*(const CyclotomicNumber& a,
                                      const CyclotomicNumber& b);
    friend CyclotomicNumber operator/(const CyclotomicNumber& a,
                                      const CyclotomicNumber& b);
    friend CyclotomicNumber operator-(const CyclotomicNumber& a);
    friend bool operator==(const CyclotomicNumber& a,
                           const CyclotomicNumber& b);
    friend bool operator!=(const CyclotomicNumber& a,
                           const CyclotomicNumber& b) {
        return !(a == b);
    }

  private:
    CyclotomicNumber(unsigned conductor, std::vector<Rational> coords)
        : conductor_(conductor), coords_(std::move(coords)) {}

    unsigned conductor_;
    std::vector<Rational> coords_;
};

// cos(2*pi*n*a/q) = (zeta_q^(na) + zeta_q^(-na)) / 2, exact at conductor q.
CyclotomicNumber cos_exact(long n, long a, unsigned q);

// cot(pi*a/q) = i (zeta_q^a + 1) / (zeta_q^a - 1), exact at conductor
// lcm(4, q). Throws Pole when q | a.
CyclotomicNumber cot_exact(long a, unsigned q);

// cot(pi*a/q) / i = (zeta_q^a + 1) / (zeta_q^a - 1), exact at conductor q.
// Same information as cot_exact up to the fixed factor i, but representable
// without enlarging the conductor; used to keep matrix conductors small.
CyclotomicNumber cot_exact_div_i(long a, unsigned q);

// The N-th cyclotomic polynomial as integer coefficients (degree phi(N)),
// computed by dividing x^N - 1 by the phi_d of proper divisors; cached.
std::vector<Integer> cyclotomic_polynomial(unsigned n);

}  // namespace harmonic
