#include "harmonic/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace harmonic {

namespace {
mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
    return std::max(a.precision(), b.precision());
}
}  // namespace

mpfr_prec_t BigFloat::bits_for_digits(unsigned digits) {
    // log2(10) = 3.3219...; 32 extra bits absorb rounding in long chains.
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873623) + 32;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::log2(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
}

Integer BigFloat::round_to_integer() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

std::string BigFloat::to_sci_string(unsigned sig_digits) const {
    if (is_zero()) return "0";
    if (sig_digits < 2) sig_digits = 2;
    std::vector<char> buf(sig_digits + 32);
    std::snprintf(buf.data(), buf.size(), "%%.%uRe", sig_digits - 1);
    std::string fmt(buf.data());
    std::vector<char> out(sig_digits + 64);
    mpfr_snprintf(out.data(), out.size(), fmt.c_str(), v_);
    return std::string(out.data());
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigFloat log(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_log(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigFloat sin(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sin(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigFloat cos(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_cos(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigFloat mul_rational(const BigFloat& a, const Rational& r) {
    BigFloat out(a.precision());
    mpfr_mul_q(out.get(), a.get(), r.get_mpq_t(), MPFR_RNDN);
    return out;
}

BigFloat pow10(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e),
                   MPFR_RNDN);
    if (e < 0) {
        BigFloat one(1, prec);
        return one / r;
    }
    return r;
}

BigFloat BigComplex::abs() const {
    BigFloat r(std::max(re.precision(), im.precision()));
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
    return r;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace harmonic
