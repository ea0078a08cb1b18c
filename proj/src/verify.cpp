#include "harmonic/verify.hpp"

#include <algorithm>
#include <mutex>

namespace harmonic {

namespace {

// Even-index Bernoulli numbers B_2, B_4, ..., exact, cached.
const Rational& bernoulli_even(unsigned j) {
    static std::mutex mutex;
    static std::vector<Rational> table;  // table[i] = B_{2(i+1)}
    std::lock_guard<std::mutex> lock(mutex);
    while (table.size() < j) {
        // B_n = -1/(n+1) * sum_{k<n} C(n+1, k) B_k over all indices; odd
        // B_k vanish beyond B_1 = -1/2.
        const unsigned n = 2 * (static_cast<unsigned>(table.size()) + 1);
        Rational sum(0);
        Integer binom(1);  // C(n+1, 0)
        // k = 0 term: B_0 = 1
        sum += Rational(binom);
        // k = 1 term: B_1 = -1/2, C(n+1, 1) = n+1
        sum += Rational(n + 1) * Rational(-1, 2);
        binom = n + 1;
        for (unsigned k = 2; k < n; ++k) {
            binom = binom * (n + 2 - k) / k;  // C(n+1,k) from C(n+1,k-1)
            if (k % 2 == 0) {
                sum += Rational(binom) * table[k / 2 - 1];
            }
        }
        Rational b = -sum / Rational(n + 1);
        b.canonicalize();
        table.push_back(b);
    }
    return table[j - 1];
}

// psi(x2) - psi(x1) by the asymptotic expansion
//   psi(x) ~ ln x - 1/(2x) - sum_{j>=1} B_{2j} / (2j x^{2j});
// for real x > 0 the remainder after J terms is bounded in magnitude by the
// first omitted term, so the difference below is accurate once that term at
// min(x1, x2) drops below the target.
BigFloat digamma_difference(const Rational& x1q, const Rational& x2q,
                            mpfr_prec_t prec, const BigFloat& target,
                            bool& converged) {
    const BigFloat x1(x1q, prec);
    const BigFloat x2(x2q, prec);
    BigFloat acc = log(x2 / x1);
    const BigFloat half(Rational(1, 2), prec);
    const BigFloat one(1, prec);
    acc = acc - half * (one / x2 - one / x1);
    BigFloat ip1 = one / (x1 * x1);
    BigFloat ip2 = one / (x2 * x2);
    BigFloat pw1 = ip1;
    BigFloat pw2 = ip2;
    converged = false;
    for (unsigned j = 1; j <= 200; ++j) {
        const Rational c = bernoulli_even(j) / Rational(2 * j);
        acc = acc - (mul_rational(pw2, c) - mul_rational(pw1, c));
        // first-omitted-term bound at the smaller of x1, x2
        const Rational cn = bernoulli_even(j + 1) / Rational(2 * (j + 1));
        pw1 = pw1 * ip1;
        pw2 = pw2 * ip2;
        const BigFloat bound =
            abs(mul_rational(x1q < x2q ? pw1 : pw2, cn));
        if (bound + bound < target) {  // one bound per psi value
            converged = true;
            break;
        }
    }
    return acc;
}

}  // namespace

BigFloat harmonic_numeric(const HarmonicIndex& idx, const PrecisionConfig& p) {
    const mpfr_prec_t prec = p.working_bits();
    if (idx.is_integer()) {
        // Exact partial sum; the series offers nothing here.
        return BigFloat(harmonic_integer(idx.a().get_ui()), prec);
    }
    const Rational r = idx.value();

    // H_r = sum_{k=1}^{K} (1/k - 1/(k+r)) + psi(K+1+r) - psi(K+1).
    // Each summed term is a/(k(kq+a)), formed from exact integers.
    unsigned long K = std::max<unsigned long>(p.digits + p.guard, 50);
    Rational abs_r = abs(r);
    K = std::max(K, mpz_get_ui(Integer(abs_r.get_num() / abs_r.get_den() + 16)
                                   .get_mpz_t()));

    for (int attempt = 0; attempt < 4; ++attempt) {
        BigFloat sum(prec);
        for (unsigned long k = 1; k <= K; ++k) {
            Rational term =
                Rational(idx.a(), Integer(k) * (Integer(k) * idx.q() + idx.a()));
            term.canonicalize();
            sum = sum + BigFloat(term, prec);
        }
        const BigFloat target =
            pow10(-static_cast<long>(p.digits + p.guard / 2), prec);
        bool converged = false;
        const BigFloat tail = digamma_difference(
            Rational(K + 1), Rational(K + 1) + r, prec, target, converged);
        if (converged) return sum + tail;
        K *= 2;  // tail bound not reached; rare, retry with a longer head
    }
    fail(ErrorKind::Precision, "harmonic_numeric: tail bound not attained");
}

BigFloat eval_atom(const LogAtom& atom, const PrecisionConfig& p) {
    const mpfr_prec_t prec = p.working_bits();
    switch (atom.kind) {
        case LogAtom::Kind::Unit:
            return BigFloat(1, prec);
        case LogAtom::Kind::Pi:
            return BigFloat::pi(prec);
        case LogAtom::Kind::Log2:
            return BigFloat::log2(prec);
        case LogAtom::Kind::LogSin: {
            const BigFloat angle =
                mul_rational(BigFloat::pi(prec), Rational(atom.k, atom.m));
            return log(sin(angle));
        }
    }
    fail(ErrorKind::Internal, "unknown atom");
}

BigFloat eval_symbolic(const SymbolicValue& v, const PrecisionConfig& p) {
    const mpfr_prec_t prec = p.working_bits();
    BigFloat acc(prec);
    for (const auto& [atom, coeff] : v.terms()) {
        const BigComplex c = coeff.numeric_embed(p.digits + p.guard);
        acc = acc + c.re * eval_atom(atom, p);
    }
    return acc;
}

BigFloat relation_residual(const std::vector<HarmonicIndex>& indices,
                           const std::vector<CyclotomicNumber>& coefficients,
                           const PrecisionConfig& p) {
    if (indices.size() != coefficients.size()) {
        fail(ErrorKind::Parse, "relation: index/coefficient length mismatch");
    }
    const mpfr_prec_t prec = p.working_bits();
    BigComplex acc(prec);
    for (size_t i = 0; i < indices.size(); ++i) {
        if (coefficients[i].is_zero()) continue;
        const BigComplex c = coefficients[i].numeric_embed(p.digits + p.guard);
        const BigFloat h = harmonic_numeric(indices[i], p);
        acc.re = acc.re + c.re * h;
        acc.im = acc.im + c.im * h;
    }
    return acc.abs();
}

namespace {

using ZVec = std::vector<Integer>;

Integer dot(const ZVec& a, const ZVec& b) {
    Integer s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Textbook LLL over the integers with exact rational Gram-Schmidt data.
// Dimensions here are tiny (<= 10), so clarity beats speed.
void lll_reduce(std::vector<ZVec>& basis) {
    const size_t n = basis.size();
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    std::vector<Rational> norm2(n);  // squared lengths of the GS vectors

    const auto recompute = [&] {
        std::vector<std::vector<Rational>> gs(
            n, std::vector<Rational>(basis[0].size()));
        for (size_t i = 0; i < n; ++i) {
            for (size_t t = 0; t < basis[i].size(); ++t) {
                gs[i][t] = Rational(basis[i][t]);
            }
            for (size_t j = 0; j < i; ++j) {
                Rational num(0);
                for (size_t t = 0; t < basis[i].size(); ++t) {
                    num += Rational(basis[i][t]) * gs[j][t];
                }
                mu[i][j] = norm2[j] == 0 ? Rational(0) : num / norm2[j];
                for (size_t t = 0; t < gs[i].size(); ++t) {
                    gs[i][t] -= mu[i][j] * gs[j][t];
                }
            }
            norm2[i] = Rational(0);
            for (const auto& c : gs[i]) norm2[i] += c * c;
        }
    };

    recompute();
    const Rational delta(99, 100);
    size_t k = 1;
    while (k < n) {
        for (size_t j = k; j-- > 0;) {
            Rational m = mu[k][j];
            if (abs(m) > Rational(1, 2)) {
                // round to nearest integer
                Integer r;
                Rational shifted = m + Rational(1, 2);
                mpz_fdiv_q(r.get_mpz_t(), shifted.get_num().get_mpz_t(),
                           shifted.get_den().get_mpz_t());
                for (size_t t = 0; t < basis[k].size(); ++t) {
                    basis[k][t] -= r * basis[j][t];
                }
                recompute();
            }
        }
        if (norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            recompute();
            k = k > 1 ? k - 1 : 1;
        }
    }
}

}  // namespace

std::optional<std::vector<long>> integer_relation(
    const std::vector<BigFloat>& logs, long max_coeff,
    const PrecisionConfig& p) {
    const size_t n = logs.size();
    if (n < 2) fail(ErrorKind::Parse, "integer_relation: need >= 2 numbers");
    if (p.digits < 20 * n) {
        fail(ErrorKind::Precision,
             "integer_relation: need digits >= 20 * count for a meaningful "
             "search");
    }
    const mpfr_prec_t prec = p.working_bits();

    // Lattice rows (e_i | round(C x_i)); a short vector's first n entries
    // form a candidate relation.
    const BigFloat scale = pow10(static_cast<long>(p.digits - 10), prec);
    std::vector<ZVec> basis(n, ZVec(n + 1, Integer(0)));
    for (size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        basis[i][n] = (logs[i] * scale).round_to_integer();
    }
    lll_reduce(basis);

    // Prefer shorter vectors; examine all reduced rows deterministically.
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return dot(basis[x], basis[x]) < dot(basis[y], basis[y]);
    });

    const BigFloat threshold = pow10(-static_cast<long>(p.digits / 2), prec);
    for (size_t row : order) {
        bool any = false;
        bool small = true;
        for (size_t i = 0; i < n; ++i) {
            if (basis[row][i] != 0) any = true;
            if (abs(basis[row][i]) > max_coeff) small = false;
        }
        if (!any || !small) continue;
        BigFloat resid(prec);
        for (size_t i = 0; i < n; ++i) {
            if (basis[row][i] == 0) continue;
            resid = resid + mul_rational(logs[i], Rational(basis[row][i]));
        }
        if (abs(resid) < threshold) {
            std::vector<long> out(n);
            int sign = 0;
            for (size_t i = 0; i < n; ++i) {
                out[i] = static_cast<long>(basis[row][i].get_si());
                if (sign == 0 && out[i] != 0) sign = out[i] > 0 ? 1 : -1;
            }
            if (sign < 0) {
                for (auto& c : out) c = -c;
            }
            return out;
        }
    }
    return std::nullopt;
}

IndependenceCheck check_sine_independence(
    const std::vector<std::pair<unsigned, unsigned>>& units, long max_coeff,
    const PrecisionConfig& p) {
    IndependenceCheck out;
    out.units = units;
    out.max_coefficient = max_coeff;
    const mpfr_prec_t prec = p.working_bits();
    const BigFloat two(2, prec);
    std::vector<BigFloat> logs;
    logs.reserve(units.size());
    for (const auto& [k, m] : units) {
        if (k == 0 || m == 0 || k >= m) {
            fail(ErrorKind::Parse, "independence: bad sine argument");
        }
        const BigFloat angle =
            mul_rational(BigFloat::pi(prec), Rational(k, m));
        logs.push_back(log(two * sin(angle)));
    }
    out.relation = integer_relation(logs, max_coeff, p);
    return out;
}

}  // namespace harmonic
