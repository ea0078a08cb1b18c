#include "harmonic/gauss.hpp"

#include <cctype>

#include "harmonic/nt.hpp"

namespace harmonic {

HarmonicIndex::HarmonicIndex(const Integer& a, const Integer& q) {
    if (q <= 0) fail(ErrorKind::Parse, "harmonic index: q must be positive");
    Rational r(a, q);
    r.canonicalize();
    a_ = r.get_num();
    q_ = r.get_den();
    if (q_ == 1 && a_ <= 0) {
        fail(ErrorKind::Pole,
             "H_n at integer n <= 0: poles at negative integers (H_0 "
             "excluded as an index)");
    }
}

HarmonicIndex HarmonicIndex::parse(const std::string& text) {
    const auto bad = [&] {
        fail(ErrorKind::Parse,
             "expected a fraction of the form a/q, got \"" + text + "\"");
    };
    size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    size_t digits_a = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        ++digits_a;
    }
    if (digits_a == 0 || pos >= text.size() || text[pos] != '/') bad();
    const std::string num = text.substr(0, pos);
    ++pos;
    const size_t den_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
    if (pos != text.size() || pos == den_start) bad();
    const std::string den = text.substr(den_start);
    Integer a(num[0] == '+' ? num.substr(1) : num);
    Integer q(den);
    if (q == 0) fail(ErrorKind::Parse, "harmonic index: q must be positive");
    if (q > 1 && a % q == 0) {
        fail(ErrorKind::Parse,
             "q divides a in \"" + text +
                 "\": an integer harmonic number must be written n/1");
    }
    return HarmonicIndex(a, q);
}

std::string HarmonicIndex::to_string() const {
    return a_.get_str() + "/" + q_.get_str();
}

Rational harmonic_integer(unsigned long n) {
    Rational h(0);
    for (unsigned long k = 1; k <= n; ++k) {
        h += Rational(1, k);
    }
    return h;
}

namespace {

// Rational correction accumulated by walking H_{a/q} to the base range
// through H_r = H_{r-1} + 1/r.
Rational recurrence_shift(const Integer& a, const Integer& q,
                          const Integer& base) {
    Rational shift(0);
    if (a > base) {
        for (Integer x = base + q; x <= a; x += q) shift += Rational(q, x);
    } else {
        for (Integer x = base; x > a; x -= q) shift -= Rational(q, x);
    }
    return shift;
}

}  // namespace

SymbolicValue harmonic_symbolic(const HarmonicIndex& idx,
                                unsigned conductor_cap) {
    const Integer& a = idx.a();
    const Integer& q = idx.q();

    if (idx.is_integer()) {
        SymbolicValue v;
        v.add_term(LogAtom::unit(),
                   CyclotomicNumber(harmonic_integer(a.get_ui())));
        return v;
    }

    if (q.fits_uint_p() == 0) {
        fail(ErrorKind::UnsupportedModulus, "denominator too large");
    }
    const unsigned qi = static_cast<unsigned>(q.get_ui());

    Integer base = a % q;
    if (base <= 0) base += q;
    const Rational shift = recurrence_shift(a, q, base);
    const long a0 = base.get_si();

    SymbolicValue v;
    if (qi == 2) {
        // H_{1/2} = 2 - 2 log 2
        v.add_term(LogAtom::unit(), CyclotomicNumber(Rational(2)));
        v.add_term(LogAtom::log2(), CyclotomicNumber(Rational(-2)));
    } else {
        require_supported_modulus(qi);
        const unsigned cap = conductor_cap ? conductor_cap : 4 * qi;
        if (nt::lcm(4, qi) > cap) {
            fail(ErrorKind::ConductorCap,
                 "conductor " + std::to_string(nt::lcm(4, qi)) +
                     " exceeds cap " + std::to_string(cap));
        }
        v.add_term(LogAtom::unit(), CyclotomicNumber(Rational(qi, a0)));
        v = v - expand_log_integer(2 * qi);
        v.add_term(LogAtom::pi(),
                   cot_exact(a0, qi) * CyclotomicNumber(Rational(-1, 2)));
        for (unsigned n = 1; n <= (qi - 1) / 2; ++n) {
            const CyclotomicNumber c =
                cos_exact(n, a0, qi) * CyclotomicNumber(Rational(2));
            const SymbolicValue ls = reduce_log_sin(n, qi);
            for (const auto& [atom, coeff] : ls.terms()) {
                v.add_term(atom, coeff * c);
            }
        }
    }

    v.add_term(LogAtom::unit(), CyclotomicNumber(shift));
    return v;
}

SymbolicValue reflection_residual(const HarmonicIndex& idx,
                                  unsigned conductor_cap) {
    const Rational r = idx.value();
    if (idx.is_integer()) {
        fail(ErrorKind::Pole, "reflection at integer r: 1-r is a pole index");
    }
    const HarmonicIndex reflected(idx.q() - idx.a(), idx.q());
    SymbolicValue v = harmonic_symbolic(idx, conductor_cap) -
                      harmonic_symbolic(reflected, conductor_cap);
    const Rational rational_part = 1 / r + 1 / (r - 1);
    v.add_term(LogAtom::unit(), CyclotomicNumber(-rational_part));
    const unsigned qi = static_cast<unsigned>(idx.q().get_ui());
    Integer base = idx.a() % idx.q();
    if (base <= 0) base += idx.q();
    v.add_term(LogAtom::pi(), cot_exact(base.get_si(), qi));
    return v;
}

}  // namespace harmonic
