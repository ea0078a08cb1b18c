#pragma once

#include <optional>
#include <vector>

#include "harmonic/gauss.hpp"

namespace harmonic {

// Decimal digits of target accuracy plus extra working digits. Precision is
// always per call; nothing global.
struct PrecisionConfig {
    unsigned digits = 100;
    unsigned guard = 20;

    PrecisionConfig() = default;
    PrecisionConfig(unsigned d, unsigned g) : digits(d), guard(g) {
        if (digits < 10) fail(ErrorKind::Precision, "digits must be >= 10");
        if (guard < 10) fail(ErrorKind::Precision, "guard must be >= 10");
    }

    mpfr_prec_t working_bits() const {
        return BigFloat::bits_for_digits(digits + guard);
    }
};

// H_{a/q} by the series H_r = r * sum_{k>=1} 1/(k(r+k)), summed to K terms
// with the digamma asymptotic tail; independent of the symbolic
// decomposition path. Correct to p.digits decimal digits.
BigFloat harmonic_numeric(const HarmonicIndex& idx, const PrecisionConfig& p);

// Numeric value of a symbolic linear combination (real part; the canonical
// coefficients of pipeline values are real).
BigFloat eval_symbolic(const SymbolicValue& v, const PrecisionConfig& p);

// Numeric value of one atom.
BigFloat eval_atom(const LogAtom& atom, const PrecisionConfig& p);

// |sum_i coeff_i * H_{idx_i}| evaluated numerically.
BigFloat relation_residual(const std::vector<HarmonicIndex>& indices,
                           const std::vector<CyclotomicNumber>& coefficients,
                           const PrecisionConfig& p);

// Heuristic integer-relation search over the given real numbers, via exact
// lattice reduction on a scaled basis. Returns a vector m with
// |sum m_i x_i| < 10^(-digits/2) and max |m_i| <= max_coeff if one is
// found; absence of a result is evidence, not proof, of independence.
// Requires logs.size() >= 2 and p.digits >= 20 * logs.size().
std::optional<std::vector<long>> integer_relation(
    const std::vector<BigFloat>& logs, long max_coeff,
    const PrecisionConfig& p);

// Multiplicative-independence spot check over sine units 2 sin(k pi / m).
// A found relation is a certified counterexample candidate (its residual is
// below tolerance); an absence is heuristic evidence only.
struct IndependenceCheck {
    std::vector<std::pair<unsigned, unsigned>> units;  // (k, m) arguments
    long max_coefficient = 50;
    std::optional<std::vector<long>> relation;  // empty = none found

    bool relation_found() const { return relation.has_value(); }
};

IndependenceCheck check_sine_independence(
    const std::vector<std::pair<unsigned, unsigned>>& units, long max_coeff,
    const PrecisionConfig& p);

}  // namespace harmonic
