#include "harmonic/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "harmonic/nt.hpp"

namespace harmonic {

namespace {

using PolyZ = std::vector<Integer>;   // dense, index = power of x
using PolyQ = std::vector<Rational>;  // dense, index = power of x

constexpr unsigned kMaxConductor = 1000000;
constexpr unsigned kMaxDegree = 8192;
// Below this degree schoolbook multiplication and long division win.
constexpr size_t kFastDegree = 40;

int degree(const PolyZ& p) {
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i] != 0) return static_cast<int>(i);
    }
    return -1;
}

void trim(PolyZ& p) { p.resize(static_cast<size_t>(degree(p) + 1)); }

PolyZ mul_schoolbook(const PolyZ& a, const PolyZ& b) {
    if (a.empty() || b.empty()) return {};
    PolyZ out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

size_t max_coeff_bits(const PolyZ& p) {
    size_t bits = 1;
    for (const auto& c : p) {
        bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    }
    return bits;
}

// Pack nonnegative coefficients into one big integer with fixed-width slots
// (a whole number of limbs each), multiply once, unpack. Splitting into
// positive and negative parts keeps the packing carry-free.
void pack_limbs(const PolyZ& p, size_t limbs_per_slot, mpz_class& out) {
    const size_t total = p.size() * limbs_per_slot + 1;
    mp_limb_t* w = mpz_limbs_write(out.get_mpz_t(), total);
    std::fill(w, w + total, 0);
    for (size_t i = 0; i < p.size(); ++i) {
        const mpz_srcptr c = p[i].get_mpz_t();
        const size_t nlimbs = mpz_size(c);
        for (size_t j = 0; j < nlimbs; ++j) {
            w[i * limbs_per_slot + j] = mpz_getlimbn(c, j);
        }
    }
    mpz_limbs_finish(out.get_mpz_t(), total);
}

void unpack_limbs(const mpz_class& packed, size_t limbs_per_slot,
                  size_t nslots, PolyZ& out) {
    out.assign(nslots, Integer(0));
    const mp_limb_t* r = mpz_limbs_read(packed.get_mpz_t());
    const size_t avail = mpz_size(packed.get_mpz_t());
    for (size_t i = 0; i < nslots; ++i) {
        const size_t lo = i * limbs_per_slot;
        if (lo >= avail) break;
        const size_t n = std::min(limbs_per_slot, avail - lo);
        mpz_import(out[i].get_mpz_t(), n, -1, sizeof(mp_limb_t), 0, 0, r + lo);
    }
}

PolyZ mul_kronecker(const PolyZ& a, const PolyZ& b) {
    const size_t nslots = a.size() + b.size() - 1;
    const size_t prod_bits = max_coeff_bits(a) + max_coeff_bits(b) +
                             64 - __builtin_clzll(std::min(a.size(), b.size())) +
                             2;
    const size_t limbs_per_slot = (prod_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

    PolyZ apos(a.size()), aneg(a.size()), bpos(b.size()), bneg(b.size());
    for (size_t i = 0; i < a.size(); ++i) (a[i] >= 0 ? apos : aneg)[i] = abs(a[i]);
    for (size_t i = 0; i < b.size(); ++i) (b[i] >= 0 ? bpos : bneg)[i] = abs(b[i]);

    mpz_class pap, pan, pbp, pbn;
    pack_limbs(apos, limbs_per_slot, pap);
    pack_limbs(aneg, limbs_per_slot, pan);
    pack_limbs(bpos, limbs_per_slot, pbp);
    pack_limbs(bneg, limbs_per_slot, pbn);

    mpz_class same = pap * pbp + pan * pbn;   // contributes with + sign
    mpz_class cross = pap * pbn + pan * pbp;  // contributes with - sign

    PolyZ u, v;
    unpack_limbs(same, limbs_per_slot, nslots, u);
    unpack_limbs(cross, limbs_per_slot, nslots, v);
    for (size_t i = 0; i < nslots; ++i) u[i] -= v[i];
    return u;
}

PolyZ poly_mul(const PolyZ& a, const PolyZ& b) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kFastDegree) return mul_schoolbook(a, b);
    return mul_kronecker(a, b);
}

// In-place remainder by a monic integer polynomial (long division).
void rem_monic_inplace(PolyZ& h, const PolyZ& f) {
    const int df = degree(f);
    for (int j = degree(h); j >= df; --j) {
        if (h[static_cast<size_t>(j)] == 0) continue;
        const Integer c = h[static_cast<size_t>(j)];
        for (int i = 0; i <= df; ++i) {
            h[static_cast<size_t>(j - df + i)] -= c * f[static_cast<size_t>(i)];
        }
    }
    h.resize(static_cast<size_t>(df));
}

// Exact quotient by a monic divisor (used for building cyclotomic
// polynomials from x^n - 1).
PolyZ div_exact_monic(PolyZ h, const PolyZ& f) {
    const int df = degree(f);
    const int dh = degree(h);
    if (dh < df) return {};
    PolyZ q(static_cast<size_t>(dh - df + 1));
    for (int j = dh; j >= df; --j) {
        const Integer c = h[static_cast<size_t>(j)];
        if (c != 0) {
            q[static_cast<size_t>(j - df)] = c;
            for (int i = 0; i <= df; ++i) {
                h[static_cast<size_t>(j - df + i)] -= c * f[static_cast<size_t>(i)];
            }
        }
    }
    return q;
}

PolyZ reverse_poly(const PolyZ& p, size_t deg_bound) {
    PolyZ out(deg_bound + 1);
    for (size_t i = 0; i <= deg_bound && i < p.size(); ++i) {
        out[deg_bound - i] = p[i];
    }
    trim(out);
    return out;
}

// Power-series inverse of f modulo x^k, for f with constant term 1.
PolyZ series_inverse(const PolyZ& f, size_t k) {
    PolyZ g{Integer(1)};
    size_t t = 1;
    while (t < k) {
        t = std::min(2 * t, k);
        PolyZ fg = poly_mul(f, g);
        fg.resize(t);
        PolyZ two_minus(t);
        for (size_t i = 0; i < t && i < fg.size(); ++i) two_minus[i] = -fg[i];
        two_minus[0] += 2;
        g = poly_mul(g, two_minus);
        g.resize(t);
    }
    trim(g);
    return g;
}

struct ConductorData {
    unsigned n = 1;
    unsigned phi = 1;
    PolyZ phi_poly;                // the n-th cyclotomic polynomial, monic
    std::vector<PolyZ> xpow;       // x^e mod phi_poly for 0 <= e < n
    PolyZ inv_rev;                 // series inverse of rev(phi_poly), length phi
};

std::mutex g_cache_mutex;
std::map<unsigned, std::shared_ptr<const ConductorData>> g_cache;

// Builds phi_d for every divisor d of n that is missing from `known`.
// Caller holds the cache mutex.
const PolyZ& build_phi_locked(unsigned n,
                              std::map<unsigned, PolyZ>& scratch) {
    if (auto it = scratch.find(n); it != scratch.end()) return it->second;
    for (std::uint64_t d64 : nt::divisors(n)) {
        const unsigned d = static_cast<unsigned>(d64);
        if (scratch.count(d)) continue;
        if (auto it = g_cache.find(d); it != g_cache.end()) {
            scratch.emplace(d, it->second->phi_poly);
            continue;
        }
        PolyZ num(static_cast<size_t>(d) + 1);
        num[0] = -1;
        num[static_cast<size_t>(d)] = 1;  // x^d - 1
        for (std::uint64_t e : nt::divisors(d)) {
            if (e == d) continue;
            num = div_exact_monic(std::move(num), scratch.at(static_cast<unsigned>(e)));
        }
        trim(num);
        scratch.emplace(d, std::move(num));
    }
    return scratch.at(n);
}

std::shared_ptr<const ConductorData> conductor_data(unsigned n) {
    if (n == 0 || n > kMaxConductor) {
        fail(ErrorKind::ConductorCap,
             "conductor " + std::to_string(n) + " out of range");
    }
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (auto it = g_cache.find(n); it != g_cache.end()) return it->second;

    std::map<unsigned, PolyZ> scratch;
    PolyZ phi_poly = build_phi_locked(n, scratch);

    auto data = std::make_shared<ConductorData>();
    data->n = n;
    data->phi = static_cast<unsigned>(nt::euler_phi(n));
    if (data->phi > kMaxDegree) {
        fail(ErrorKind::ConductorCap,
             "cyclotomic degree " + std::to_string(data->phi) + " too large");
    }
    data->phi_poly = std::move(phi_poly);

    data->xpow.resize(n);
    PolyZ cur(data->phi);  // dense, always exactly phi entries
    cur[0] = 1;
    for (unsigned e = 0; e < n; ++e) {
        data->xpow[e] = cur;
        // multiply by x; the overflow at x^phi reduces through the monic
        // cyclotomic polynomial: x^phi = -sum_{i<phi} phi_poly[i] x^i
        const Integer lead = cur[data->phi - 1];
        for (size_t i = data->phi; i-- > 1;) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (lead != 0) {
            for (size_t i = 0; i < data->phi; ++i) {
                cur[i] -= lead * data->phi_poly[i];
            }
        }
    }

    if (data->phi >= kFastDegree) {
        data->inv_rev = series_inverse(reverse_poly(data->phi_poly, data->phi),
                                       data->phi);
    }

    g_cache.emplace(n, data);
    return g_cache.at(n);
}

// Remainder mod phi_poly of a product polynomial, choosing long division or
// the cached-Newton fast path by size.
PolyZ rem_by_phi(PolyZ h, const ConductorData& cd) {
    const int dh = degree(h);
    const int d = static_cast<int>(cd.phi);
    if (dh < d) {
        h.resize(static_cast<size_t>(d));
        return h;
    }
    if (cd.inv_rev.empty()) {
        rem_monic_inplace(h, cd.phi_poly);
        return h;
    }
    const size_t k = static_cast<size_t>(dh - d + 1);
    PolyZ rev_h = reverse_poly(h, static_cast<size_t>(dh));
    PolyZ qrev = poly_mul(rev_h, cd.inv_rev);
    qrev.resize(k);
    PolyZ q = reverse_poly(qrev, k - 1);
    PolyZ qf = poly_mul(q, cd.phi_poly);
    h.resize(static_cast<size_t>(d));
    for (size_t i = 0; i < static_cast<size_t>(d) && i < qf.size(); ++i) {
        h[i] -= qf[i];
    }
    return h;
}

// Rational coefficient vector as integer numerators over one denominator.
struct ScaledPoly {
    PolyZ num;
    Integer den{1};
};

ScaledPoly to_scaled(const PolyQ& c) {
    ScaledPoly s;
    s.num.resize(c.size());
    for (const auto& q : c) {
        mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(),
                q.get_den().get_mpz_t());
    }
    for (size_t i = 0; i < c.size(); ++i) {
        s.num[i] = c[i].get_num() * (s.den / c[i].get_den());
    }
    return s;
}

PolyQ from_scaled(const PolyZ& num, const Integer& den, size_t size) {
    PolyQ out(size);
    for (size_t i = 0; i < size && i < num.size(); ++i) {
        Rational q(num[i], den);
        q.canonicalize();
        out[i] = q;
    }
    return out;
}

// Sum of c_i * xpow[row_of(i)], shared by embed and conjugation.
template <typename RowOf>
PolyQ combine_rows(const PolyQ& c, const ConductorData& cd, RowOf row_of) {
    ScaledPoly s = to_scaled(c);
    PolyZ acc(cd.phi);
    for (size_t i = 0; i < s.num.size(); ++i) {
        if (s.num[i] == 0) continue;
        const PolyZ& row = cd.xpow[row_of(i)];
        for (size_t j = 0; j < row.size(); ++j) acc[j] += s.num[i] * row[j];
    }
    return from_scaled(acc, s.den, cd.phi);
}

PolyQ zero_coords(unsigned phi) { return PolyQ(phi); }

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned n) {
    return conductor_data(n)->phi_poly;
}

CyclotomicNumber::CyclotomicNumber() : conductor_(1), coords_(1) {}

CyclotomicNumber::CyclotomicNumber(const Rational& r)
    : conductor_(1), coords_(1, r) {}

CyclotomicNumber CyclotomicNumber::root_of_unity(unsigned conductor,
                                                 long power) {
    auto cd = conductor_data(conductor);
    long e = power % static_cast<long>(conductor);
    if (e < 0) e += conductor;
    const PolyZ& row = cd->xpow[static_cast<size_t>(e)];
    PolyQ coords(cd->phi);
    for (size_t i = 0; i < row.size(); ++i) coords[i] = Rational(row[i]);
    return CyclotomicNumber(conductor, std::move(coords));
}

CyclotomicNumber CyclotomicNumber::from_coords(unsigned conductor,
                                               std::vector<Rational> coords) {
    auto cd = conductor_data(conductor);
    if (coords.size() != cd->phi) {
        fail(ErrorKind::Parse, "coordinate vector has wrong length");
    }
    for (auto& c : coords) c.canonicalize();
    return CyclotomicNumber(conductor, std::move(coords));
}

bool CyclotomicNumber::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Rational& c) { return c == 0; });
}

bool CyclotomicNumber::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i) {
        if (coords_[i] != 0) return false;
    }
    return true;
}

Rational CyclotomicNumber::rational_value() const {
    if (!is_rational()) {
        fail(ErrorKind::Internal, "rational_value() on an irrational element");
    }
    return coords_[0];
}

CyclotomicNumber CyclotomicNumber::embed(unsigned target) const {
    if (target == conductor_) return *this;
    if (target % conductor_ != 0) {
        fail(ErrorKind::Parse,
             "embed: conductor " + std::to_string(conductor_) +
                 " does not divide " + std::to_string(target));
    }
    auto cd = conductor_data(target);
    const size_t stride = target / conductor_;
    PolyQ out = combine_rows(coords_, *cd,
                             [&](size_t i) { return i * stride; });
    return CyclotomicNumber(target, std::move(out));
}

CyclotomicNumber CyclotomicNumber::conj() const {
    auto cd = conductor_data(conductor_);
    const size_t n = conductor_;
    PolyQ out = combine_rows(coords_, *cd,
                             [&](size_t i) { return (n - i) % n; });
    return CyclotomicNumber(conductor_, std::move(out));
}

CyclotomicNumber operator-(const CyclotomicNumber& a) {
    PolyQ out(a.coords_.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = -a.coords_[i];
    return CyclotomicNumber(a.conductor_, std::move(out));
}

namespace {
std::pair<CyclotomicNumber, CyclotomicNumber> at_common_conductor(
    const CyclotomicNumber& a, const CyclotomicNumber& b) {
    const unsigned l =
        static_cast<unsigned>(nt::lcm(a.conductor(), b.conductor()));
    return {a.embed(l), b.embed(l)};
}
}  // namespace

CyclotomicNumber operator+(const CyclotomicNumber& a,
                           const CyclotomicNumber& b) {
    auto [x, y] = at_common_conductor(a, b);
    PolyQ out(x.coords().size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = x.coords()[i] + y.coords()[i];
    }
    return CyclotomicNumber::from_coords(x.conductor(), std::move(out));
}

CyclotomicNumber operator-(const CyclotomicNumber& a,
                           const CyclotomicNumber& b) {
    return a + (-b);
}

CyclotomicNumber operator*(const CyclotomicNumber& a,
                           const CyclotomicNumber& b) {
    auto [x, y] = at_common_conductor(a, b);
    auto cd = conductor_data(x.conductor());
    ScaledPoly sx = to_scaled(x.coords());
    ScaledPoly sy = to_scaled(y.coords());
    trim(sx.num);
    trim(sy.num);
    if (sx.num.empty() || sy.num.empty()) {
        return CyclotomicNumber::from_coords(x.conductor(),
                                             zero_coords(cd->phi));
    }
    PolyZ prod = rem_by_phi(poly_mul(sx.num, sy.num), *cd);
    return CyclotomicNumber::from_coords(
        x.conductor(), from_scaled(prod, sx.den * sy.den, cd->phi));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    if (is_rational()) {
        return CyclotomicNumber(conductor_,
                                [&] {
                                    PolyQ c(coords_.size());
                                    c[0] = 1 / coords_[0];
                                    return c;
                                }());
    }
    auto cd = conductor_data(conductor_);

    // Extended Euclid against the cyclotomic polynomial, keeping remainders
    // monic at every step to control coefficient growth. The cyclotomic
    // polynomial is irreducible over Q, so the gcd is a nonzero constant.
    PolyQ r0(cd->phi_poly.size());
    for (size_t i = 0; i < r0.size(); ++i) r0[i] = Rational(cd->phi_poly[i]);
    PolyQ u0;  // cofactor of *this in r0
    PolyQ r1 = coords_;
    PolyQ u1{Rational(1)};

    auto deg = [](const PolyQ& p) {
        for (size_t i = p.size(); i-- > 0;) {
            if (p[i] != 0) return static_cast<int>(i);
        }
        return -1;
    };
    auto make_monic = [&](PolyQ& r, PolyQ& u) {
        const int d = deg(r);
        const Rational lead = r[static_cast<size_t>(d)];
        if (lead == 1) return;
        for (auto& c : r) c /= lead;
        for (auto& c : u) c /= lead;
    };
    make_monic(r1, u1);

    while (deg(r1) > 0) {
        // divide r0 by monic r1: quotient q, remainder r2
        PolyQ rem = r0;
        const int d1 = deg(r1);
        PolyQ q(static_cast<size_t>(std::max(deg(r0) - d1 + 1, 1)));
        for (int j = deg(rem); j >= d1; --j) {
            const Rational c = rem[static_cast<size_t>(j)];
            if (c == 0) continue;
            q[static_cast<size_t>(j - d1)] = c;
            for (int i = 0; i <= d1; ++i) {
                rem[static_cast<size_t>(j - d1 + i)] -= c * r1[static_cast<size_t>(i)];
            }
        }
        // u2 = u0 - q * u1
        PolyQ u2(std::max(u0.size(), q.size() + u1.size()));
        for (size_t i = 0; i < u0.size(); ++i) u2[i] = u0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < u1.size(); ++j) {
                u2[i + j] -= q[i] * u1[j];
            }
        }
        if (deg(rem) < 0) {
            fail(ErrorKind::Internal, "cyclotomic inverse: zero remainder");
        }
        make_monic(rem, u2);
        r0 = std::move(r1);
        u0 = std::move(u1);
        r1 = std::move(rem);
        u1 = std::move(u2);
    }
    // r1 is the constant 1 after monic normalization; u1 * this == 1 mod phi
    PolyQ out(cd->phi);
    for (size_t i = 0; i < u1.size() && i < out.size(); ++i) out[i] = u1[i];
    // the cofactor can reach degree phi in edge cases; reduce it back
    if (u1.size() > cd->phi) {
        ScaledPoly s = to_scaled(u1);
        PolyZ red = rem_by_phi(std::move(s.num), *cd);
        out = from_scaled(red, s.den, cd->phi);
    }
    return CyclotomicNumber(conductor_, std::move(out));
}

CyclotomicNumber operator/(const CyclotomicNumber& a,
                           const CyclotomicNumber& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    return a * b.inverse();
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.conductor() == b.conductor()) return a.coords() == b.coords();
    auto [x, y] = at_common_conductor(a, b);
    return x.coords() == y.coords();
}

BigComplex CyclotomicNumber::numeric_embed(unsigned digits) const {
    const mpfr_prec_t prec = BigFloat::bits_for_digits(digits) + 16;
    const BigFloat pi = BigFloat::pi(prec);
    BigComplex acc(prec);
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        if (i == 0) {
            acc.re = acc.re + BigFloat(coords_[0], prec);
            continue;
        }
        Rational turns(2 * static_cast<long>(i), conductor_);
        turns.canonicalize();
        const BigFloat angle = mul_rational(pi, turns);
        acc.re = acc.re + mul_rational(cos(angle), coords_[i]);
        acc.im = acc.im + mul_rational(sin(angle), coords_[i]);
    }
    return acc;
}

CyclotomicNumber cos_exact(long n, long a, unsigned q) {
    if (q == 0) fail(ErrorKind::Parse, "cos_exact: q must be positive");
    long e = (n % static_cast<long>(q)) * (a % static_cast<long>(q));
    const CyclotomicNumber z = CyclotomicNumber::root_of_unity(q, e);
    const CyclotomicNumber zbar = CyclotomicNumber::root_of_unity(q, -e);
    return (z + zbar) * CyclotomicNumber(Rational(1, 2));
}

CyclotomicNumber cot_exact_div_i(long a, unsigned q) {
    if (q == 0 || a % static_cast<long>(q) == 0) {
        fail(ErrorKind::Pole, "cot(pi*a/q) has a pole: q divides a");
    }
    const CyclotomicNumber z = CyclotomicNumber::root_of_unity(q, a);
    const CyclotomicNumber one(1L);
    return (z + one) / (z - one);
}

CyclotomicNumber cot_exact(long a, unsigned q) {
    if (q == 0 || a % static_cast<long>(q) == 0) {
        fail(ErrorKind::Pole, "cot(pi*a/q) has a pole: q divides a");
    }
    const unsigned l = static_cast<unsigned>(nt::lcm(4, q));
    const CyclotomicNumber i_unit =
        CyclotomicNumber::root_of_unity(l, static_cast<long>(l / 4));
    return i_unit * cot_exact_div_i(a, q).embed(l);
}

}  // namespace harmonic
