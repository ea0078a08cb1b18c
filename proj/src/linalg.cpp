#include "harmonic/linalg.hpp"

#include <algorithm>
#include <set>

#include "harmonic/nt.hpp"

namespace harmonic {

ExactMatrix::ExactMatrix(size_t rows, size_t cols,
                         std::vector<CyclotomicNumber> entries)
    : rows_(rows), cols_(cols) {
    if (entries.size() != rows * cols) {
        fail(ErrorKind::Parse, "matrix: entry count does not match shape");
    }
    std::uint64_t l = 1;
    for (const auto& e : entries) l = nt::lcm(l, e.conductor());
    conductor_ = static_cast<unsigned>(l);
    entries_.reserve(entries.size());
    for (auto& e : entries) entries_.push_back(e.embed(conductor_));
}

namespace {

struct Echelon {
    std::vector<std::vector<CyclotomicNumber>> rows;
    std::vector<size_t> pivot_cols;
    int swap_sign = 1;
};

// Bareiss elimination: cross-multiplication updates divided exactly by the
// previous pivot, which keeps entries the size of minors. One inverse per
// pivot step; pivot = first nonzero entry in the column.
Echelon eliminate(const ExactMatrix& m) {
    Echelon e;
    e.rows.resize(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) {
        e.rows[i].reserve(m.cols());
        for (size_t j = 0; j < m.cols(); ++j) e.rows[i].push_back(m.at(i, j));
    }
    const CyclotomicNumber one(1L);
    CyclotomicNumber prev_inv = one;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t pr = row;
        while (pr < m.rows() && e.rows[pr][col].is_zero()) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row) {
            std::swap(e.rows[pr], e.rows[row]);
            e.swap_sign = -e.swap_sign;
        }
        const CyclotomicNumber pivot = e.rows[row][col];
        for (size_t i = row + 1; i < m.rows(); ++i) {
            const CyclotomicNumber factor = e.rows[i][col];
            for (size_t j = col; j < m.cols(); ++j) {
                const CyclotomicNumber& cur = e.rows[i][j];
                if (cur.is_zero() && factor.is_zero()) continue;
                CyclotomicNumber num = cur * pivot;
                if (!factor.is_zero() && !e.rows[row][j].is_zero()) {
                    num = num - factor * e.rows[row][j];
                }
                e.rows[i][j] = num * prev_inv;
            }
            e.rows[i][col] = CyclotomicNumber();
        }
        e.pivot_cols.push_back(col);
        prev_inv = pivot.inverse();
        ++row;
    }
    return e;
}

}  // namespace

RankKernel rank_kernel(const ExactMatrix& m) {
    const Echelon e = eliminate(m);
    RankKernel out;
    out.rank = e.pivot_cols.size();

    std::vector<CyclotomicNumber> pivot_inv(out.rank);
    for (size_t k = 0; k < out.rank; ++k) {
        pivot_inv[k] = e.rows[k][e.pivot_cols[k]].inverse();
    }

    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : e.pivot_cols) is_pivot[c] = true;

    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<CyclotomicNumber> v(m.cols());
        v[f] = CyclotomicNumber(1L);
        for (size_t k = out.rank; k-- > 0;) {
            const size_t c = e.pivot_cols[k];
            if (c > f) continue;
            CyclotomicNumber s;
            for (size_t j = c + 1; j <= f; ++j) {
                if (v[j].is_zero() || e.rows[k][j].is_zero()) continue;
                s = s + e.rows[k][j] * v[j];
            }
            v[c] = -(s * pivot_inv[k]);
        }
        // normalize: first nonzero coordinate becomes 1
        for (size_t j = 0; j < v.size(); ++j) {
            if (!v[j].is_zero()) {
                const CyclotomicNumber inv = v[j].inverse();
                for (auto& c : v) {
                    if (!c.is_zero()) c = c * inv;
                }
                break;
            }
        }
        // exact re-multiplication check
        for (size_t i = 0; i < m.rows(); ++i) {
            CyclotomicNumber s;
            for (size_t j = 0; j < m.cols(); ++j) {
                if (v[j].is_zero()) continue;
                s = s + m.at(i, j) * v[j];
            }
            if (!s.is_zero()) {
                fail(ErrorKind::Internal,
                     "kernel vector fails exact re-multiplication");
            }
        }
        out.kernel.push_back(std::move(v));
    }
    return out;
}

CyclotomicNumber determinant(const ExactMatrix& m) {
    if (m.rows() != m.cols()) {
        fail(ErrorKind::Parse, "determinant: matrix must be square");
    }
    const Echelon e = eliminate(m);
    if (e.pivot_cols.size() < m.rows()) return CyclotomicNumber();
    // Bareiss invariant: the final pivot is the determinant up to row swaps.
    CyclotomicNumber det = e.rows[m.rows() - 1][m.cols() - 1];
    if (e.swap_sign < 0) det = -det;
    return det;
}

ExactMatrix galois_matrix(unsigned q, bool shifted) {
    if (q < 3 || q % 2 == 0 || !nt::is_prime(q)) {
        fail(ErrorKind::Parse, "galois_matrix: q must be an odd prime");
    }
    const unsigned alpha = (q - 1) / 2;
    std::vector<CyclotomicNumber> entries;
    entries.reserve(static_cast<size_t>(alpha) * alpha);
    const CyclotomicNumber minus_one(-1L);
    for (unsigned i = 1; i <= alpha; ++i) {
        for (unsigned j = 1; j <= alpha; ++j) {
            CyclotomicNumber c = cos_exact(i, j, q);
            if (shifted) c = c + minus_one;
            entries.push_back(std::move(c));
        }
    }
    return ExactMatrix(alpha, alpha, std::move(entries));
}

std::vector<HarmonicIndex> full_index_family(unsigned m) {
    std::vector<HarmonicIndex> out;
    out.reserve(m);
    for (unsigned a = 1; a <= m; ++a) {
        out.emplace_back(static_cast<long>(a), static_cast<long>(m));
    }
    return out;
}

namespace {

// Pi-row entry scaled by 2i: 2i * (-1/2 cot(pi a/q)) = cot(pi a/q)/i,
// representable at conductor q itself. Scaling one row by a fixed nonzero
// algebraic number changes neither the rank nor the kernel, and it keeps
// the assembly conductor at lcm(q_i) instead of lcm(4, q_i).
CyclotomicNumber scaled_pi_entry(const HarmonicIndex& idx) {
    if (idx.is_integer()) return CyclotomicNumber();
    const unsigned q = static_cast<unsigned>(idx.q().get_ui());
    Integer base = idx.a() % idx.q();
    if (base <= 0) base += idx.q();
    return cot_exact_div_i(base.get_si(), q);
}

std::string residual_string(const BigFloat& r) { return r.to_sci_string(2); }

}  // namespace

SpanResult span_dimension(const std::vector<HarmonicIndex>& indices,
                          const PrecisionConfig& p, unsigned conductor_cap) {
    if (indices.empty()) {
        fail(ErrorKind::Parse, "span_dimension: empty index list");
    }
    SpanResult res;
    for (const auto& idx : indices) {
        if (std::find(res.indices.begin(), res.indices.end(), idx) ==
            res.indices.end()) {
            res.indices.push_back(idx);
        } else {
            ++res.dropped_duplicates;
        }
    }

    std::uint64_t lcm_q = 1;
    for (const auto& idx : res.indices) {
        if (!idx.q().fits_uint_p()) {
            fail(ErrorKind::UnsupportedModulus,
                 "denominator too large in " + idx.to_string());
        }
        lcm_q = nt::lcm(lcm_q, idx.q().get_ui());
    }
    const unsigned cap =
        conductor_cap ? conductor_cap : static_cast<unsigned>(4 * lcm_q);

    std::vector<SymbolicValue> values;
    values.reserve(res.indices.size());
    for (const auto& idx : res.indices) {
        try {
            values.push_back(harmonic_symbolic(idx, cap));
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::UnsupportedModulus) {
                fail(ErrorKind::UnsupportedModulus,
                     "index " + idx.to_string() + ": " + err.what());
            }
            throw;
        }
    }
    values = harmonize_levels(values);

    std::set<LogAtom> atom_set;
    for (const auto& v : values) {
        for (const auto& [a, c] : v.terms()) atom_set.insert(a);
    }
    res.atoms.assign(atom_set.begin(), atom_set.end());

    std::vector<CyclotomicNumber> entries;
    entries.reserve(res.atoms.size() * values.size());
    for (const auto& atom : res.atoms) {
        for (size_t j = 0; j < values.size(); ++j) {
            if (atom.kind == LogAtom::Kind::Pi) {
                // consistency of the row scaling with the stored coefficient
                const CyclotomicNumber stored = values[j].coefficient(atom);
                const CyclotomicNumber entry = scaled_pi_entry(res.indices[j]);
                if (!res.indices[j].is_integer()) {
                    Integer base = res.indices[j].a() % res.indices[j].q();
                    if (base <= 0) base += res.indices[j].q();
                    const unsigned q =
                        static_cast<unsigned>(res.indices[j].q().get_ui());
                    CyclotomicNumber expected =
                        q == 2 ? CyclotomicNumber()
                               : cot_exact(base.get_si(), q) *
                                     CyclotomicNumber(Rational(-1, 2));
                    if (stored != expected) {
                        fail(ErrorKind::Internal,
                             "pi coefficient inconsistent with cotangent");
                    }
                } else if (!stored.is_zero()) {
                    fail(ErrorKind::Internal,
                         "integer index with nonzero pi coefficient");
                }
                entries.push_back(entry);
            } else {
                entries.push_back(values[j].coefficient(atom));
            }
        }
    }

    ExactMatrix m(res.atoms.size(), values.size(), std::move(entries));
    if (m.conductor() > cap) {
        fail(ErrorKind::ConductorCap,
             "assembly conductor " + std::to_string(m.conductor()) +
                 " exceeds cap " + std::to_string(cap));
    }
    res.conductor = m.conductor();

    const RankKernel rk = rank_kernel(m);
    res.dim = rk.rank;

    const BigFloat threshold =
        pow10(-static_cast<long>(p.digits / 2), p.working_bits());
    for (const auto& v : rk.kernel) {
        // exact symbolic cancellation across the decompositions
        SymbolicValue sum;
        for (size_t j = 0; j < values.size(); ++j) {
            if (v[j].is_zero()) continue;
            sum = sum + values[j].scaled(v[j]);
        }
        if (!is_zero(sum)) {
            fail(ErrorKind::Internal,
                 "kernel relation does not cancel symbolically");
        }
        const BigFloat resid = relation_residual(res.indices, v, p);
        if (!(resid < threshold)) {
            fail(ErrorKind::Internal,
                 "relation residual " + residual_string(resid) +
                     " above certification threshold");
        }
        RelationReport rep;
        rep.indices = res.indices;
        rep.coefficients = v;
        rep.residual = residual_string(resid);
        rep.digits = p.digits;
        res.relations.push_back(std::move(rep));
    }
    return res;
}

DimWResult dim_w(const std::vector<unsigned>& primes,
                 const PrecisionConfig& p, unsigned conductor_cap) {
    if (primes.empty()) fail(ErrorKind::Parse, "dim_w: empty prime set");
    std::set<unsigned> seen;
    bool all_odd = true;
    for (unsigned q : primes) {
        if (!nt::is_prime(q)) {
            fail(ErrorKind::Parse,
                 std::to_string(q) + " is not prime");
        }
        if (!seen.insert(q).second) {
            fail(ErrorKind::Parse, "duplicate prime " + std::to_string(q));
        }
        if (q == 2) all_odd = false;
    }
    std::vector<HarmonicIndex> indices;
    indices.emplace_back(1L, 1L);
    for (unsigned q : primes) {
        for (unsigned a = 1; a <= q - 1; ++a) {
            indices.emplace_back(static_cast<long>(a), static_cast<long>(q));
        }
    }
    DimWResult out;
    out.span = span_dimension(indices, p, conductor_cap);
    out.dim = out.span.dim;
    if (all_odd) {
        size_t f = 2;
        for (unsigned q : primes) f += nt::euler_phi(q) / 2;
        out.formula = f;
        out.match = (out.dim == f);
    }
    return out;
}

size_t upper_bound_pow2(unsigned n) {
    if (n < 2) fail(ErrorKind::Parse, "upper_bound_pow2: need n >= 2");
    const std::uint64_t q = nt::pow_u64(2, n);
    return nt::euler_phi(nt::euler_phi(q)) + 2;
}

size_t upper_bound_odd(const std::vector<ModulusTerm>& terms) {
    if (terms.empty()) fail(ErrorKind::Parse, "upper_bound_odd: empty");
    size_t sum = 3;
    for (const auto& t : terms) {
        if (t.prime < 3 || t.prime % 2 == 0 || !nt::is_prime(t.prime)) {
            fail(ErrorKind::Parse, "upper_bound_odd: need odd primes");
        }
        if (t.doubled && t.prime == 3) {
            fail(ErrorKind::UnsupportedModulus,
                 "doubled modulus with prime 3 is outside the bound's "
                 "hypotheses");
        }
        sum += nt::euler_phi(nt::pow_u64(t.prime, t.power)) / 2;
    }
    return sum;
}

}  // namespace harmonic
