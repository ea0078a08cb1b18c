#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harmonic/verify.hpp"

namespace harmonic {

// Dense matrix over one cyclotomic field: all entries share a conductor
// (the lcm of the input conductors, taken at construction).
class ExactMatrix {
  public:
    ExactMatrix(size_t rows, size_t cols,
                std::vector<CyclotomicNumber> entries);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    unsigned conductor() const { return conductor_; }

    const CyclotomicNumber& at(size_t i, size_t j) const {
        return entries_[i * cols_ + j];
    }

  private:
    size_t rows_;
    size_t cols_;
    unsigned conductor_;
    std::vector<CyclotomicNumber> entries_;
};

struct RankKernel {
    size_t rank = 0;
    // Kernel basis vectors, each of length cols, normalized so the first
    // nonzero coordinate is 1, ordered by free column.
    std::vector<std::vector<CyclotomicNumber>> kernel;
};

// Fraction-free (Bareiss-style) elimination with exact pivots; pivot is the
// first nonzero entry of each column, so results are deterministic. Every
// kernel vector is re-multiplied against the matrix before being returned.
RankKernel rank_kernel(const ExactMatrix& m);

// Exact determinant of a square matrix.
CyclotomicNumber determinant(const ExactMatrix& m);

// The (q-1)/2 x (q-1)/2 matrix with entries cos(2 pi i j / q), or
// -1 + cos(2 pi i j / q) when shifted; q an odd prime. These are the Galois
// conjugate matrices behind the exact dimension results.
ExactMatrix galois_matrix(unsigned q, bool shifted);

// An exact linear dependence among harmonic numbers, with its numeric
// residual attached as a cross-check.
struct RelationReport {
    std::vector<HarmonicIndex> indices;
    std::vector<CyclotomicNumber> coefficients;
    std::string residual;  // scientific notation
    unsigned digits = 0;
};

struct SpanResult {
    std::vector<HarmonicIndex> indices;  // deduplicated, input order
    size_t dropped_duplicates = 0;
    std::vector<LogAtom> atoms;          // matrix rows, canonical order
    unsigned conductor = 1;              // assembly conductor
    size_t dim = 0;
    std::vector<RelationReport> relations;
};

// Exact dimension of the span of {H_idx} over the algebraic numbers, with a
// kernel-certified relation report for every dependence. Residuals are
// evaluated at p.digits and must come out below 10^(-p.digits/2).
// conductor_cap = 0 means the default 4 * lcm of the denominators.
SpanResult span_dimension(const std::vector<HarmonicIndex>& indices,
                          const PrecisionConfig& p = PrecisionConfig(),
                          unsigned conductor_cap = 0);

struct DimWResult {
    size_t dim = 0;
    // Sum phi(q)/2 + 2 when every prime is odd; absent for q = 2, where the
    // closed formula is not integral and the direct rank stands alone.
    std::optional<size_t> formula;
    std::optional<bool> match;
    SpanResult span;
};

// Dimension of the span of {H_1} u {H_{a/q} : 1 <= a <= q-1, q in J} for a
// set J of primes.
DimWResult dim_w(const std::vector<unsigned>& primes,
                 const PrecisionConfig& p = PrecisionConfig(),
                 unsigned conductor_cap = 0);

// Upper bound phi(phi(2^n)) + 2 for the span of {H_{a/2^n} : 1 <= a <= 2^n}.
size_t upper_bound_pow2(unsigned n);

// One modulus 2^e * q^m in an upper-bound statement, e in {0, 1}.
struct ModulusTerm {
    unsigned prime = 0;  // odd prime
    unsigned power = 1;  // m
    bool doubled = false;  // e = 1
};

// Upper bound sum phi(q^m)/2 + 3 for the span of the full index families at
// the given moduli. Requires odd primes; a doubled modulus requires q != 3.
size_t upper_bound_odd(const std::vector<ModulusTerm>& terms);

// The full family {H_{a/m} : 1 <= a <= m} used by the bound statements.
std::vector<HarmonicIndex> full_index_family(unsigned m);

}  // namespace harmonic
