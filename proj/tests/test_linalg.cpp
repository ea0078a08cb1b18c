#include <doctest.h>

#include <algorithm>
#include <random>

#include "harmonic/linalg.hpp"
#include "harmonic/nt.hpp"

using namespace harmonic;

namespace {

const PrecisionConfig kP(100, 20);

CyclotomicNumber Q(long num, long den = 1) {
    return CyclotomicNumber(Rational(num, den));
}

ExactMatrix from_rationals(size_t rows, size_t cols,
                           std::vector<long> entries) {
    std::vector<CyclotomicNumber> e;
    e.reserve(entries.size());
    for (long v : entries) e.push_back(Q(v));
    return ExactMatrix(rows, cols, std::move(e));
}

}  // namespace

TEST_CASE("rank of the identity") {
    const ExactMatrix m = from_rationals(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    const RankKernel rk = rank_kernel(m);
    CHECK(rk.rank == 3);
    CHECK(rk.kernel.empty());
    CHECK(determinant(m) == Q(1));
}

TEST_CASE("determinant tracks row swaps and singular cases") {
    CHECK(determinant(from_rationals(2, 2, {0, 1, 1, 0})) == Q(-1));
    CHECK(determinant(from_rationals(2, 2, {0, 2, 3, 0})) == Q(-6));
    CHECK(determinant(from_rationals(2, 2, {1, 2, 2, 4})).is_zero());
    CHECK(determinant(from_rationals(3, 3, {2, 0, 1, 1, 1, 0, 0, 3, 1})) ==
          Q(5));
    CHECK_THROWS_AS(determinant(from_rationals(2, 3, {1, 2, 3, 4, 5, 6})),
                    Error);
}

TEST_CASE("equal rows produce a kernel") {
    const ExactMatrix m = from_rationals(2, 3, {1, 2, 3, 1, 2, 3});
    const RankKernel rk = rank_kernel(m);
    CHECK(rk.rank == 1);
    CHECK(rk.kernel.size() == 2);
    for (const auto& v : rk.kernel) {
        // normalized: first nonzero coordinate is 1
        for (const auto& c : v) {
            if (!c.is_zero()) {
                CHECK(c == Q(1));
                break;
            }
        }
    }
}

TEST_CASE("kernel over an irrational field") {
    // columns (1, z), (z, z^2) with z = zeta_5: second = z * first
    const CyclotomicNumber z = CyclotomicNumber::root_of_unity(5);
    const ExactMatrix m(2, 2, {Q(1), z, z, z * z});
    const RankKernel rk = rank_kernel(m);
    CHECK(rk.rank == 1);
    REQUIRE(rk.kernel.size() == 1);
    CHECK(rk.kernel[0][0] == Q(1));
    CHECK(rk.kernel[0][1] == -z.inverse());
}

TEST_CASE("random matrices: kernel re-multiplication and rank bounds") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long> val(-4, 4);
    for (int rep = 0; rep < 20; ++rep) {
        const size_t rows = 2 + rep % 3;
        const size_t cols = 2 + (rep * 7) % 4;
        std::vector<long> entries(rows * cols);
        for (auto& e : entries) e = val(rng);
        const ExactMatrix m = from_rationals(rows, cols, entries);
        const RankKernel rk = rank_kernel(m);
        CHECK(rk.rank <= std::min(rows, cols));
        CHECK(rk.kernel.size() == cols - rk.rank);
    }
}

TEST_CASE("cosine matrix for q = 5 is non-singular") {
    std::vector<CyclotomicNumber> entries;
    for (unsigned i = 1; i <= 2; ++i) {
        for (unsigned j = 1; j <= 2; ++j) {
            entries.push_back(cos_exact(i, j, 5));
        }
    }
    const ExactMatrix c(2, 2, std::move(entries));
    CHECK(rank_kernel(c).rank == 2);
}

TEST_CASE("galois matrices: examples and non-singularity") {
    const ExactMatrix g3 = galois_matrix(3, false);
    CHECK(g3.rows() == 1);
    CHECK(g3.at(0, 0) == Q(-1, 2));
    CHECK_FALSE(determinant(g3).is_zero());

    CHECK_FALSE(determinant(galois_matrix(5, true)).is_zero());

    CHECK(rank_kernel(galois_matrix(7, false)).rank == 3);
    CHECK(rank_kernel(galois_matrix(7, true)).rank == 3);

    for (unsigned q : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
        CHECK_FALSE(determinant(galois_matrix(q, false)).is_zero());
        CHECK_FALSE(determinant(galois_matrix(q, true)).is_zero());
    }

    CHECK_THROWS_AS(galois_matrix(4, false), Error);
    CHECK_THROWS_AS(galois_matrix(9, false), Error);
}

TEST_CASE("span of a single integer harmonic number") {
    const SpanResult r = span_dimension({HarmonicIndex(1, 1)}, kP);
    CHECK(r.dim == 1);
    CHECK(r.relations.empty());
}

TEST_CASE("span of the full q = 4 family") {
    const SpanResult r = span_dimension(full_index_family(4), kP);
    CHECK(r.indices.size() == 4);  // 1/4, 1/2, 3/4, 1/1
    CHECK(r.dim <= upper_bound_pow2(2));
    CHECK(r.dim == 3);
    CHECK(r.relations.size() == 1);
}

TEST_CASE("q = 5: dimension 4 with exactly one certified relation") {
    std::vector<HarmonicIndex> idx = {HarmonicIndex(1, 1)};
    for (long a = 1; a <= 4; ++a) idx.emplace_back(a, 5);
    const SpanResult r = span_dimension(idx, kP);
    CHECK(r.dim == 4);
    REQUIRE(r.relations.size() == 1);
    const RelationReport& rel = r.relations[0];
    // residual certified below 1e-50 at 100 digits
    const BigFloat resid =
        relation_residual(rel.indices, rel.coefficients, kP);
    CHECK(resid < pow10(-50, 64));
    CHECK(rel.digits == 100);
}

TEST_CASE("span_dimension deduplicates") {
    const SpanResult r = span_dimension(
        {HarmonicIndex(1, 2), HarmonicIndex(2, 4), HarmonicIndex(1, 1)}, kP);
    CHECK(r.indices.size() == 2);
    CHECK(r.dropped_duplicates == 1);
    CHECK(r.dim == 2);
}

TEST_CASE("span_dimension is invariant under permutation") {
    std::vector<HarmonicIndex> idx;
    for (long a = 1; a <= 7; ++a) idx.emplace_back(a, 8);
    idx.emplace_back(1, 1);
    const SpanResult base = span_dimension(idx, kP);
    std::mt19937_64 rng(4242);
    for (int rep = 0; rep < 3; ++rep) {
        std::shuffle(idx.begin(), idx.end(), rng);
        const SpanResult r = span_dimension(idx, kP);
        CHECK(r.dim == base.dim);
        CHECK(r.relations.size() == base.relations.size());
    }
}

TEST_CASE("span_dimension names unsupported indices") {
    try {
        span_dimension({HarmonicIndex(1, 6)}, kP);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedModulus);
        CHECK(std::string(e.what()).find("1/6") != std::string::npos);
    }
}

TEST_CASE("dim_w singles match the closed formula") {
    for (unsigned q : {3u, 5u, 7u, 11u, 13u}) {
        const DimWResult r = dim_w({q}, kP);
        REQUIRE(r.formula.has_value());
        CHECK(*r.formula == nt::euler_phi(q) / 2 + 2);
        CHECK(r.dim == *r.formula);
        CHECK(r.match.value());
    }
}

TEST_CASE("dim_w pairs match the additive formula") {
    const std::vector<unsigned> primes = {3, 5, 7, 11, 13};
    for (size_t i = 0; i < primes.size(); ++i) {
        for (size_t j = i + 1; j < primes.size(); ++j) {
            const DimWResult r = dim_w({primes[i], primes[j]}, kP);
            REQUIRE(r.formula.has_value());
            CHECK(*r.formula == nt::euler_phi(primes[i]) / 2 +
                                    nt::euler_phi(primes[j]) / 2 + 2);
            CHECK(r.dim == *r.formula);
            CHECK(r.match.value());
        }
    }
}

TEST_CASE("dim_w at q = 2 reports the direct rank, no formula") {
    const DimWResult r = dim_w({2}, kP);
    CHECK(r.dim == 2);
    CHECK_FALSE(r.formula.has_value());
    CHECK_FALSE(r.match.has_value());
}

TEST_CASE("dim_w input validation") {
    CHECK_THROWS_AS(dim_w({4}, kP), Error);
    CHECK_THROWS_AS(dim_w({5, 5}, kP), Error);
    CHECK_THROWS_AS(dim_w({}, kP), Error);
}

TEST_CASE("upper bounds") {
    CHECK(upper_bound_pow2(3) == 4);  // phi(phi(8)) + 2
    CHECK(upper_bound_pow2(2) == 3);
    CHECK(upper_bound_odd({{5, 1, true}}) == 5);   // phi(5)/2 + 3
    CHECK(upper_bound_odd({{7, 1, false}, {11, 1, false}}) == 11);
    CHECK_THROWS_AS(upper_bound_odd({{3, 1, true}}), Error);
    CHECK_NOTHROW(upper_bound_odd({{3, 2, false}}));
    CHECK_THROWS_AS(upper_bound_pow2(1), Error);
}

TEST_CASE("span dimension bounds, exhaustive over prime-power moduli <= 32") {
    for (unsigned m = 3; m <= 32; ++m) {
        const ModulusInfo info = classify_modulus(m);
        size_t bound = 0;
        if (info.shape == ModulusShape::PowerOfTwo) {
            bound = upper_bound_pow2(info.exponent);
        } else if (info.shape == ModulusShape::OddPrimePower) {
            bound = upper_bound_odd({{info.prime, info.exponent, false}});
        } else {
            continue;
        }
        const SpanResult r = span_dimension(full_index_family(m), kP);
        CHECK(r.dim <= bound);
    }
    // a doubled modulus shares its odd part's bound
    const SpanResult r10 = span_dimension(full_index_family(10), kP);
    CHECK(r10.dim <= upper_bound_odd({{5, 1, true}}));
}

TEST_CASE("matrix conductor stays at the lcm of the moduli") {
    std::vector<HarmonicIndex> idx = {HarmonicIndex(1, 1)};
    for (long a = 1; a <= 4; ++a) idx.emplace_back(a, 5);
    const SpanResult r = span_dimension(idx, kP);
    CHECK(r.conductor == 5);  // the pi row is scaled into Q(zeta_5)
}
