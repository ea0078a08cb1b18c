#pragma once

#include <compare>
#include <map>
#include <vector>

#include "harmonic/cyclotomic.hpp"

namespace harmonic {

// Canonical symbolic atoms: the constant 1, pi, log 2, and log sin(k*pi/m)
// for canonical (k, m). A LogSin atom is canonical when m >= 3 is an odd
// prime power or a power of two, gcd(k, m) = 1, k lies in the lower half
// range 1 <= k <= floor((m-1)/2), and for m = 2^n additionally
// k < 2^(n-2) (the quarter-range survivors of the radical folding;
// sin(pi/4) itself collapses to a multiple of log 2).
struct LogAtom {
    enum class Kind { Unit = 0, Pi = 1, Log2 = 2, LogSin = 3 };

    Kind kind = Kind::Unit;
    unsigned k = 0;  // LogSin only
    unsigned m = 0;  // LogSin only

    static LogAtom unit() { return {Kind::Unit, 0, 0}; }
    static LogAtom pi() { return {Kind::Pi, 0, 0}; }
    static LogAtom log2() { return {Kind::Log2, 0, 0}; }
    static LogAtom log_sin(unsigned k, unsigned m) {
        return {Kind::LogSin, k, m};
    }

    bool is_canonical() const;

    // Unit < Pi < Log2 < LogSin, LogSin ordered by (m, k). This fixes
    // serialization order and matrix row order everywhere.
    friend auto operator<=>(const LogAtom& a, const LogAtom& b) {
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (auto c = a.m <=> b.m; c != 0) return c;
        return a.k <=> b.k;
    }
    friend bool operator==(const LogAtom&, const LogAtom&) = default;
};

std::string atom_name(const LogAtom& atom);

// A finite linear combination of canonical atoms with algebraic
// coefficients; absent atom = coefficient zero. Zero coefficients are
// pruned on every mutation, so the zero value is exactly the empty map.
class SymbolicValue {
  public:
    SymbolicValue() = default;

    static SymbolicValue atom(const LogAtom& a,
                              const CyclotomicNumber& coeff);
    static SymbolicValue rational_multiple(const LogAtom& a,
                                           const Rational& coeff);

    const std::map<LogAtom, CyclotomicNumber>& terms() const {
        return terms_;
    }
    bool empty() const { return terms_.empty(); }

    // Coefficient of an atom (zero if absent).
    CyclotomicNumber coefficient(const LogAtom& a) const;

    void add_term(const LogAtom& a, const CyclotomicNumber& coeff);

    SymbolicValue scaled(const CyclotomicNumber& s) const;
    SymbolicValue scaled(const Rational& s) const;

    friend SymbolicValue operator+(const SymbolicValue& a,
                                   const SymbolicValue& b);
    friend SymbolicValue operator-(const SymbolicValue& a,
                                   const SymbolicValue& b);
    friend bool operator==(const SymbolicValue& a, const SymbolicValue& b);

  private:
    std::map<LogAtom, CyclotomicNumber> terms_;
};

// A symbolic value represents the number zero exactly when every canonical
// coefficient vanishes; with pruned storage that is an empty term map.
inline bool is_zero(const SymbolicValue& v) { return v.empty(); }

// Interior signs of the nested radical
//   sin(k*pi/2^n) = (1/2) sqrt(2 + s_1 sqrt(2 + s_2 sqrt(2 + ... + sqrt 2)))
// with n-1 nested square roots and n-2 free interior signs (the outermost
// radicand is always of the form 2 + s_1 * tail).
struct SignSequence {
    std::vector<int> signs;  // each +1 or -1; length n-2 for argument 2^n
};

// Requires n >= 2, k odd, 1 <= k < 2^n.
SignSequence nested_radical_signs(unsigned k, unsigned n);

// Numeric value of the nested radical at the given decimal precision.
BigFloat eval_sign_sequence(const SignSequence& s, unsigned digits);

// Supported modulus shapes for the log-sin reduction.
enum class ModulusShape {
    One,
    Two,
    PowerOfTwo,         // 2^n, n >= 2
    OddPrimePower,      // p^t, p odd prime
    TwiceOddPrimePower, // 2 p^t, p odd prime, p != 3
    Unsupported,
};

struct ModulusInfo {
    ModulusShape shape = ModulusShape::Unsupported;
    unsigned prime = 0;  // odd prime p, or 2 for PowerOfTwo
    unsigned exponent = 0;
    bool doubled = false;  // true for 2 p^t
};

ModulusInfo classify_modulus(unsigned m);

// Throws UnsupportedModulus unless m is 1, 2, 2^n, p^t, or 2 p^t (p != 3).
void require_supported_modulus(unsigned m);

// Rewrites log sin(k*pi/m) over the canonical atoms, exactly.
// Requires m >= 3 and 1 <= k <= m-1; m must be of supported shape.
SymbolicValue reduce_log_sin(unsigned k, unsigned m);

// log m over the canonical atoms, for m = 2^e * p^t (odd prime p) or a pure
// power of two; m >= 2. Uses the sine product
//   m = 2^(m-1) * prod_{k=1}^{m-1} sin(k*pi/m)
// on the odd part, so the result lives at that part's own level.
SymbolicValue expand_log_integer(unsigned m);

// Number of steps of the index iteration j -> 2q - 2j used by the
// upper-half fold at modulus 2q, starting from j in the upper half
// [(q+1)/2, q-1], until the index first lands in the lower half
// [1, (q-1)/2]. Exposed for the termination checks.
unsigned half_fold_iteration_steps(unsigned j, unsigned q);

// Distinct LogSin atoms of one odd prime in a set of values may sit at
// different levels p^s; they are only jointly canonical at one common
// level. This lifts every lower-level atom to the maximal level present,
// using the sine distribution relation, and returns the rewritten values.
std::vector<SymbolicValue> harmonize_levels(
    const std::vector<SymbolicValue>& values);

}  // namespace harmonic
