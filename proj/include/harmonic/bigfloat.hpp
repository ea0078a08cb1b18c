#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "harmonic/rational.hpp"

namespace harmonic {

// RAII wrapper around mpfr_t. Every value carries its own precision in bits;
// binary operations compute at the larger precision of their operands.
// Nothing here touches process-global state, so values can be used freely
// across threads.
class BigFloat {
  public:
    static constexpr mpfr_prec_t kMinPrec = 64;

    explicit BigFloat(mpfr_prec_t prec = kMinPrec) {
        mpfr_init2(v_, prec < kMinPrec ? kMinPrec : prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(long value, mpfr_prec_t prec) : BigFloat(prec) {
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    BigFloat(const Rational& value, mpfr_prec_t prec) : BigFloat(prec) {
        mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, kMinPrec);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Decimal digits -> working bits, with headroom for rounding.
    static mpfr_prec_t bits_for_digits(unsigned digits);

    static BigFloat pi(mpfr_prec_t prec);
    static BigFloat log2(mpfr_prec_t prec);

    // Nearest integer, as an exact Integer.
    Integer round_to_integer() const;

    // Scientific-notation string with the given number of significant
    // digits, e.g. "1.2e-87". Deterministic for a deterministic value.
    std::string to_sci_string(unsigned sig_digits) const;

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a);
    friend bool operator<(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator>(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) > 0;
    }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator==(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) == 0;
    }

  private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& a);
BigFloat sqrt(const BigFloat& a);
BigFloat log(const BigFloat& a);
BigFloat sin(const BigFloat& a);
BigFloat cos(const BigFloat& a);

// a * r with r exact rational.
BigFloat mul_rational(const BigFloat& a, const Rational& r);

// 10^(-e) at the given precision, e may be negative.
BigFloat pow10(long e, mpfr_prec_t prec);

// Minimal complex arithmetic over BigFloat; used for numeric embeddings of
// cyclotomic numbers and for relation residuals.
struct BigComplex {
    BigFloat re;
    BigFloat im;

    explicit BigComplex(mpfr_prec_t prec = BigFloat::kMinPrec)
        : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    BigFloat abs() const;
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);

}  // namespace harmonic
