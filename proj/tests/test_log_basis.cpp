#include <doctest.h>

#include <cmath>

#include "harmonic/log_basis.hpp"
#include "harmonic/nt.hpp"
#include "harmonic/verify.hpp"

using namespace harmonic;

namespace {

const PrecisionConfig kP(100, 20);

BigFloat tol(long e) { return pow10(e, 512); }

BigFloat ref_log_sin(unsigned k, unsigned m, const PrecisionConfig& p = kP) {
    const mpfr_prec_t prec = p.working_bits();
    return log(sin(mul_rational(BigFloat::pi(prec), Rational(k, m))));
}

SymbolicValue unit_coeff_atom(unsigned k, unsigned m) {
    return SymbolicValue::rational_multiple(LogAtom::log_sin(k, m),
                                            Rational(1));
}

SymbolicValue log2_times(const Rational& r) {
    return SymbolicValue::rational_multiple(LogAtom::log2(), r);
}

}  // namespace

TEST_CASE("atom ordering is Unit < Pi < Log2 < LogSin by (m, k)") {
    CHECK(LogAtom::unit() < LogAtom::pi());
    CHECK(LogAtom::pi() < LogAtom::log2());
    CHECK(LogAtom::log2() < LogAtom::log_sin(1, 3));
    CHECK(LogAtom::log_sin(2, 5) < LogAtom::log_sin(1, 7));
    CHECK(LogAtom::log_sin(1, 7) < LogAtom::log_sin(2, 7));
}

TEST_CASE("nested radical signs: examples") {
    CHECK(nested_radical_signs(1, 2).signs.empty());
    // sin(pi/8) = (1/2) sqrt(2 - sqrt 2)
    CHECK(nested_radical_signs(1, 3).signs == std::vector<int>{-1});
    // value check for k=3, n=4 against the sine oracle at 50 digits
    const SignSequence s = nested_radical_signs(3, 4);
    const BigFloat v = eval_sign_sequence(s, 60);
    const mpfr_prec_t prec = BigFloat::bits_for_digits(60);
    const BigFloat ref = sin(mul_rational(BigFloat::pi(prec), Rational(3, 16)));
    CHECK(abs(v - ref) < tol(-50));
}

TEST_CASE("nested radical signs: domain errors") {
    CHECK_THROWS_AS(nested_radical_signs(2, 3), Error);  // even k
    CHECK_THROWS_AS(nested_radical_signs(9, 3), Error);  // out of range
    CHECK_THROWS_AS(nested_radical_signs(1, 1), Error);
}

TEST_CASE("nested radical identity for n <= 6, all odd k") {
    for (unsigned n = 2; n <= 6; ++n) {
        const unsigned m = 1u << n;
        for (unsigned k = 1; k < m; k += 2) {
            const BigFloat v = eval_sign_sequence(nested_radical_signs(k, n), 60);
            const mpfr_prec_t prec = BigFloat::bits_for_digits(60);
            const BigFloat ref =
                sin(mul_rational(BigFloat::pi(prec), Rational(k, m)));
            CHECK(abs(v - ref) < tol(-50));
            CHECK(v > BigFloat(0, 64));
            CHECK(v < BigFloat(1, 64));
        }
    }
}

TEST_CASE("reduce_log_sin trivial examples") {
    CHECK(reduce_log_sin(1, 4) == log2_times(Rational(-1, 2)));
    CHECK(reduce_log_sin(4, 5) == unit_coeff_atom(1, 5));
    // complement at 10: sin(6 pi/10) = sin(2 pi/5)
    const SymbolicValue v = reduce_log_sin(6, 10);
    CHECK(v == unit_coeff_atom(2, 5));
}

TEST_CASE("reduce_log_sin distribution example at 9") {
    // log sin(3 pi/9) = 2 log 2 + log sin(pi/9) + log sin(2 pi/9)
    //                   + log sin(4 pi/9)
    SymbolicValue expected = log2_times(Rational(2));
    expected = expected + unit_coeff_atom(1, 9) + unit_coeff_atom(2, 9) +
               unit_coeff_atom(4, 9);
    CHECK(reduce_log_sin(3, 9) == expected);
}

TEST_CASE("reduce_log_sin numeric example at 10") {
    const BigFloat lhs = eval_symbolic(reduce_log_sin(6, 10), kP);
    CHECK(abs(lhs - ref_log_sin(6, 10)) < tol(-100));
}

TEST_CASE("unsupported moduli are refused") {
    for (unsigned m : {6u, 12u, 15u, 18u, 20u, 21u, 54u}) {
        try {
            reduce_log_sin(1, m);
            CHECK_MESSAGE(false, "expected rejection of m=" << m);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnsupportedModulus);
        }
    }
    CHECK_THROWS_AS(reduce_log_sin(1, 2), Error);   // m >= 3 at the API
    CHECK_THROWS_AS(reduce_log_sin(5, 5), Error);   // k range
}

TEST_CASE("round-trip soundness for all supported m <= 64") {
    for (unsigned m = 3; m <= 64; ++m) {
        if (classify_modulus(m).shape == ModulusShape::Unsupported) continue;
        for (unsigned k = 1; k <= m - 1; ++k) {
            const SymbolicValue v = reduce_log_sin(k, m);
            for (const auto& [atom, coeff] : v.terms()) {
                CHECK(atom.is_canonical());
                CHECK(coeff.is_real());
            }
            const BigFloat lhs = eval_symbolic(v, kP);
            CHECK(abs(lhs - ref_log_sin(k, m)) < tol(-90));
        }
    }
}

TEST_CASE("idempotence on canonical atoms") {
    for (unsigned m : {5u, 7u, 8u, 9u, 16u, 25u}) {
        for (unsigned k = 1; k <= (m - 1) / 2; ++k) {
            const LogAtom atom = LogAtom::log_sin(k, m);
            if (!atom.is_canonical()) continue;
            CHECK(reduce_log_sin(k, m) == unit_coeff_atom(k, m));
        }
    }
}

TEST_CASE("half-fold iteration terminates within the ceil(log2 q) + 2 bound") {
    for (unsigned q = 5; q <= 1000; q += 2) {
        if (q % 3 == 0) continue;
        const unsigned bound =
            static_cast<unsigned>(std::ceil(std::log2(q))) + 2;
        for (unsigned j = (q + 1) / 2; j <= q - 1; ++j) {
            CHECK(half_fold_iteration_steps(j, q) <= bound);
        }
    }
}

TEST_CASE("expand_log_integer examples") {
    CHECK(expand_log_integer(2) == log2_times(Rational(1)));
    // log 3 = 2 log sin(pi/3) + 2 log 2
    SymbolicValue expected = log2_times(Rational(2));
    expected = expected + unit_coeff_atom(1, 3).scaled(Rational(2));
    CHECK(expand_log_integer(3) == expected);
    // log 5 numerically
    const BigFloat v5 = eval_symbolic(expand_log_integer(5), kP);
    const BigFloat ref = log(BigFloat(5, kP.working_bits()));
    CHECK(abs(v5 - ref) < tol(-100));
    // powers and doubled moduli
    for (unsigned m : {4u, 9u, 10u, 25u, 27u, 32u, 49u, 98u}) {
        const BigFloat v = eval_symbolic(expand_log_integer(m), kP);
        const BigFloat r = log(BigFloat(Rational(m), kP.working_bits()));
        CHECK(abs(v - r) < tol(-95));
    }
    CHECK_THROWS_AS(expand_log_integer(15), Error);
    CHECK_THROWS_AS(expand_log_integer(1), Error);
}

TEST_CASE("symbolic arithmetic basics") {
    const SymbolicValue x =
        log2_times(Rational(1)) + unit_coeff_atom(1, 5);
    CHECK(x.scaled(Rational(0)).empty());
    CHECK(is_zero(x - x));
    const SymbolicValue y = log2_times(Rational(1)) -
                            unit_coeff_atom(1, 5);
    CHECK(x + y == log2_times(Rational(2)));
}

TEST_CASE("is_zero encodes exact cancellation only") {
    CHECK(is_zero(SymbolicValue()));
    // a tiny but nonzero exact coefficient is not zero
    Rational tiny(1);
    for (int i = 0; i < 30; ++i) tiny /= 10;
    CHECK_FALSE(is_zero(SymbolicValue::rational_multiple(LogAtom::pi(), tiny)));
    // log 3 - 2 log sin(pi/3) - 2 log 2 = 0, exactly
    SymbolicValue v = expand_log_integer(3);
    v = v - unit_coeff_atom(1, 3).scaled(Rational(2));
    v = v - log2_times(Rational(2));
    CHECK(is_zero(v));
    const BigFloat numeric = eval_symbolic(expand_log_integer(3), kP) -
                             eval_symbolic(unit_coeff_atom(1, 3), kP) * BigFloat(2, 64) -
                             BigFloat::log2(kP.working_bits()) * BigFloat(2, 64);
    CHECK(abs(numeric) < tol(-95));
}

TEST_CASE("harmonize_levels lifts lower prime-power levels") {
    // log sin(pi/5) against level-25 atoms: the lift of 1/5 is 5/25
    std::vector<SymbolicValue> vals = {unit_coeff_atom(1, 5),
                                       unit_coeff_atom(1, 25)};
    const auto lifted = harmonize_levels(vals);
    CHECK(lifted[1] == vals[1]);  // already at the top level
    CHECK(lifted[0] == reduce_log_sin(5, 25));
    for (const auto& [atom, c] : lifted[0].terms()) {
        if (atom.kind == LogAtom::Kind::LogSin) CHECK(atom.m == 25);
    }
    // value preserved numerically
    CHECK(abs(eval_symbolic(lifted[0], kP) - ref_log_sin(1, 5)) < tol(-95));
    // different primes are left alone
    std::vector<SymbolicValue> mixed = {unit_coeff_atom(1, 5),
                                        unit_coeff_atom(1, 7)};
    CHECK(harmonize_levels(mixed) == mixed);
}

TEST_CASE("two expansion routes for log 25 agree exactly") {
    // direct sine product at level 25 vs 2 * (log 5 lifted to level 25)
    const SymbolicValue direct = expand_log_integer(25);
    std::vector<SymbolicValue> vals = {expand_log_integer(5).scaled(Rational(2)),
                                       direct};
    const auto lifted = harmonize_levels(vals);
    CHECK(lifted[0] == lifted[1]);
}
