#include "harmonic/log_basis.hpp"

#include <algorithm>

#include "harmonic/nt.hpp"

namespace harmonic {

bool LogAtom::is_canonical() const {
    if (kind != Kind::LogSin) return true;
    if (m < 3) return false;
    if (k < 1 || nt::gcd(k, m) != 1) return false;
    if (k > (m - 1) / 2) return false;
    const ModulusInfo info = classify_modulus(m);
    if (info.shape == ModulusShape::OddPrimePower) return true;
    if (info.shape == ModulusShape::PowerOfTwo) {
        // The quarter-range boundary sin(pi/4) collapses to log 2, so the
        // only admissible power-of-two atoms start at m = 8.
        return m >= 8 && k <= ((m - 1) / 2 + 1) / 2;
    }
    return false;
}

std::string atom_name(const LogAtom& atom) {
    switch (atom.kind) {
        case LogAtom::Kind::Unit: return "Unit";
        case LogAtom::Kind::Pi: return "Pi";
        case LogAtom::Kind::Log2: return "Log2";
        case LogAtom::Kind::LogSin: return "LogSin";
    }
    return "?";
}

SymbolicValue SymbolicValue::atom(const LogAtom& a,
                                  const CyclotomicNumber& coeff) {
    SymbolicValue v;
    v.add_term(a, coeff);
    return v;
}

SymbolicValue SymbolicValue::rational_multiple(const LogAtom& a,
                                               const Rational& coeff) {
    return atom(a, CyclotomicNumber(coeff));
}

CyclotomicNumber SymbolicValue::coefficient(const LogAtom& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? CyclotomicNumber() : it->second;
}

void SymbolicValue::add_term(const LogAtom& a, const CyclotomicNumber& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        terms_.emplace(a, coeff);
        return;
    }
    it->second = it->second + coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

SymbolicValue SymbolicValue::scaled(const CyclotomicNumber& s) const {
    SymbolicValue out;
    if (s.is_zero()) return out;
    for (const auto& [a, c] : terms_) out.add_term(a, c * s);
    return out;
}

SymbolicValue SymbolicValue::scaled(const Rational& s) const {
    return scaled(CyclotomicNumber(s));
}

SymbolicValue operator+(const SymbolicValue& a, const SymbolicValue& b) {
    SymbolicValue out = a;
    for (const auto& [atom, c] : b.terms_) out.add_term(atom, c);
    return out;
}

SymbolicValue operator-(const SymbolicValue& a, const SymbolicValue& b) {
    return a + b.scaled(Rational(-1));
}

bool operator==(const SymbolicValue& a, const SymbolicValue& b) {
    return is_zero(a - b);
}

SignSequence nested_radical_signs(unsigned k, unsigned n) {
    if (n < 2) fail(ErrorKind::Parse, "nested radical: n must be >= 2");
    const unsigned m = 1u << n;
    if (k % 2 == 0 || k == 0 || k >= m) {
        fail(ErrorKind::Parse, "nested radical: k must be odd and in [1, 2^n)");
    }
    // sin(k*pi/2^n) = cos(j*pi/2^n) with j = |2^(n-1) - k|; then repeated
    // half-angle steps. A negative cosine flips the sign and reflects the
    // index, which is exactly where the minus signs come from.
    const unsigned half = m / 2;
    unsigned j = k < half ? half - k : k - half;
    SignSequence out;
    for (unsigned level = n; level >= 3; --level) {
        const unsigned quarter = 1u << (level - 2);
        if (j < quarter) {
            out.signs.push_back(+1);
        } else {
            out.signs.push_back(-1);
            j = 2 * quarter - j;
        }
    }
    if (j != 1) fail(ErrorKind::Internal, "nested radical: bad index chain");
    return out;
}

BigFloat eval_sign_sequence(const SignSequence& s, unsigned digits) {
    const mpfr_prec_t prec = BigFloat::bits_for_digits(digits) + 16;
    const BigFloat two(2, prec);
    BigFloat t = sqrt(two);
    for (size_t i = s.signs.size(); i-- > 0;) {
        t = sqrt(s.signs[i] > 0 ? two + t : two - t);
    }
    return t / two;
}

ModulusInfo classify_modulus(unsigned m) {
    ModulusInfo info;
    if (m == 1) {
        info.shape = ModulusShape::One;
        return info;
    }
    if (m == 2) {
        info.shape = ModulusShape::Two;
        info.prime = 2;
        info.exponent = 1;
        return info;
    }
    unsigned e2 = 0;
    unsigned rest = m;
    while (rest % 2 == 0) {
        rest /= 2;
        ++e2;
    }
    if (rest == 1) {
        info.shape = ModulusShape::PowerOfTwo;
        info.prime = 2;
        info.exponent = e2;
        return info;
    }
    const auto f = nt::factor(rest);
    if (f.size() != 1) return info;
    const unsigned p = static_cast<unsigned>(f.begin()->first);
    const unsigned t = f.begin()->second;
    if (e2 == 0) {
        info.shape = ModulusShape::OddPrimePower;
        info.prime = p;
        info.exponent = t;
        return info;
    }
    if (e2 == 1 && p != 3) {
        info.shape = ModulusShape::TwiceOddPrimePower;
        info.prime = p;
        info.exponent = t;
        info.doubled = true;
        return info;
    }
    return info;
}

void require_supported_modulus(unsigned m) {
    if (classify_modulus(m).shape == ModulusShape::Unsupported) {
        fail(ErrorKind::UnsupportedModulus,
             "modulus " + std::to_string(m) +
                 " is not of a supported shape (2^n, p^t, or 2*p^t with odd "
                 "prime p != 3)");
    }
}

namespace {

const Rational kHalf(1, 2);

SymbolicValue log2_times(const Rational& r) {
    return SymbolicValue::rational_multiple(LogAtom::log2(), r);
}

SymbolicValue reduce_any(unsigned k, unsigned m);

// m = 2^n. After complement and halving, odd survivors below the quarter
// range are atoms; sin(pi/4) collapses to log 2; the rest fold against the
// index with the flipped leading radical sign:
//   log sin(k*pi/m) = -log sin(k*'*pi/m) - log 2 + log sin(k*'*pi/(m/2)),
// k*' = m/2 - k, which is the product-to-sum identity for the pair (the
// sign-flip partners multiply to a radical one layer shorter).
SymbolicValue reduce_pow2(unsigned k, unsigned m) {
    const unsigned half = m / 2;
    if (k == half) return {};  // sin(pi/2) = 1
    if (k > half) k = m - k;
    if (k % 2 == 0) return reduce_any(k / 2, half);
    if (m == 4) {
        // sin(pi/4) = 2^(-1/2)
        return log2_times(-kHalf);
    }
    const unsigned quarter = m / 4;
    if (k < quarter) {
        return SymbolicValue::rational_multiple(LogAtom::log_sin(k, m),
                                                Rational(1));
    }
    const unsigned kstar = half - k;
    return reduce_pow2(kstar, half) - reduce_pow2(kstar, m) -
           SymbolicValue::rational_multiple(LogAtom::log2(), Rational(1));
}

// m = p^t, p odd prime. Indices sharing a factor with p expand through the
// sine distribution relation
//   sin(b*x*pi/m) = 2^(b-1) * prod_{u = x mod m/b, 1<=u<=m-1} sin(u*pi/m)
// with b = gcd(k, m), landing on coprime indices at the same level.
SymbolicValue reduce_odd_prime_power(unsigned k, unsigned m) {
    const unsigned alpha = (m - 1) / 2;
    if (k > alpha) k = m - k;
    const unsigned g = static_cast<unsigned>(nt::gcd(k, m));
    if (g == 1) {
        return SymbolicValue::rational_multiple(LogAtom::log_sin(k, m),
                                                Rational(1));
    }
    const unsigned x = k / g;
    const unsigned step = m / g;
    SymbolicValue acc = log2_times(Rational(static_cast<long>(g) - 1));
    for (unsigned s = 0; s < g; ++s) {
        acc = acc + reduce_odd_prime_power(x + step * s, m);
    }
    return acc;
}

// m = 2q, q = p^t, p odd prime, p != 3. Even indices halve to level q.
// Indices sharing a factor with p strip it first via the distribution
// relation at modulus 2q. Remaining odd coprime indices fold through
// sin(A)sin(B) = (cos(A-B) - cos(A+B))/2 with A+B = pi/2, pairing each
// index with its complement to q; the complement is even, so one fold
// lands everything at level q.
SymbolicValue reduce_twice_odd(unsigned j, unsigned m) {
    const unsigned q = m / 2;
    if (j == q) return {};  // sin(pi/2) = 1
    if (j > q) j = m - j;
    if (j % 2 == 0) return reduce_any(j / 2, q);
    const unsigned g = static_cast<unsigned>(nt::gcd(j, q));
    if (g > 1) {
        const unsigned x = j / g;
        const unsigned step = m / g;
        SymbolicValue acc = log2_times(Rational(static_cast<long>(g) - 1));
        for (unsigned s = 0; s < g; ++s) {
            acc = acc + reduce_twice_odd(x + step * s, m);
        }
        return acc;
    }
    const unsigned lower = (q - 1) / 2;
    if (j <= lower) {
        return reduce_odd_prime_power(j, q) -
               reduce_odd_prime_power((q - j) / 2, q) - log2_times(Rational(1));
    }
    // upper-half fold: log sin(j*pi/2q) =
    //   -log sin((q-j)*pi/2q) + log sin((2q-2j)*pi/2q) - log 2
    return reduce_twice_odd(2 * (q - j), m) - reduce_twice_odd(q - j, m) -
           log2_times(Rational(1));
}

SymbolicValue reduce_any(unsigned k, unsigned m) {
    const ModulusInfo info = classify_modulus(m);
    switch (info.shape) {
        case ModulusShape::Two:
            return {};  // k = 1: sin(pi/2) = 1
        case ModulusShape::PowerOfTwo:
            return reduce_pow2(k, m);
        case ModulusShape::OddPrimePower:
            return reduce_odd_prime_power(k, m);
        case ModulusShape::TwiceOddPrimePower:
            return reduce_twice_odd(k, m);
        default:
            fail(ErrorKind::UnsupportedModulus,
                 "modulus " + std::to_string(m) + " not supported");
    }
}

}  // namespace

SymbolicValue reduce_log_sin(unsigned k, unsigned m) {
    if (m < 3) fail(ErrorKind::Parse, "reduce_log_sin: m must be >= 3");
    if (k < 1 || k > m - 1) {
        fail(ErrorKind::Parse, "reduce_log_sin: need 1 <= k <= m-1");
    }
    require_supported_modulus(m);
    return reduce_any(k, m);
}

SymbolicValue expand_log_integer(unsigned m) {
    if (m < 2) fail(ErrorKind::Parse, "expand_log_integer: m must be >= 2");
    unsigned e2 = 0;
    unsigned w = m;
    while (w % 2 == 0) {
        w /= 2;
        ++e2;
    }
    SymbolicValue acc = log2_times(Rational(e2));
    if (w == 1) return acc;
    const ModulusInfo info = classify_modulus(w);
    if (info.shape != ModulusShape::OddPrimePower) {
        fail(ErrorKind::UnsupportedModulus,
             "expand_log_integer: odd part of " + std::to_string(m) +
                 " is not a prime power");
    }
    // sine product over a full period: w = 2^(w-1) prod_{k=1}^{w-1} sin(k*pi/w)
    acc = acc + log2_times(Rational(static_cast<long>(w) - 1));
    for (unsigned k = 1; k <= (w - 1) / 2; ++k) {
        acc = acc + reduce_log_sin(k, w).scaled(Rational(2));
    }
    return acc;
}

unsigned half_fold_iteration_steps(unsigned j, unsigned q) {
    const unsigned lower = (q - 1) / 2;
    unsigned steps = 0;
    while (j > lower) {
        j = 2 * q - 2 * j;
        ++steps;
        if (steps > 10000) {
            fail(ErrorKind::Internal, "half fold iteration did not terminate");
        }
    }
    return steps;
}

std::vector<SymbolicValue> harmonize_levels(
    const std::vector<SymbolicValue>& values) {
    // Maximal prime-power level present, per odd prime.
    std::map<unsigned, unsigned> max_exp;
    for (const auto& v : values) {
        for (const auto& [atom, c] : v.terms()) {
            if (atom.kind != LogAtom::Kind::LogSin) continue;
            const ModulusInfo info = classify_modulus(atom.m);
            if (info.shape != ModulusShape::OddPrimePower) continue;
            auto [it, inserted] = max_exp.emplace(info.prime, info.exponent);
            if (!inserted) it->second = std::max(it->second, info.exponent);
        }
    }
    std::vector<SymbolicValue> out;
    out.reserve(values.size());
    for (const auto& v : values) {
        SymbolicValue w;
        for (const auto& [atom, c] : v.terms()) {
            if (atom.kind == LogAtom::Kind::LogSin) {
                const ModulusInfo info = classify_modulus(atom.m);
                if (info.shape == ModulusShape::OddPrimePower &&
                    info.exponent < max_exp.at(info.prime)) {
                    const unsigned t = max_exp.at(info.prime);
                    const unsigned target =
                        static_cast<unsigned>(nt::pow_u64(info.prime, t));
                    const unsigned lift =
                        static_cast<unsigned>(nt::pow_u64(
                            info.prime, t - info.exponent));
                    const SymbolicValue lifted =
                        reduce_log_sin(atom.k * lift, target);
                    for (const auto& [la, lc] : lifted.terms()) {
                        w.add_term(la, lc * c);
                    }
                    continue;
                }
            }
            w.add_term(atom, c);
        }
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace harmonic
