#include "harmonic/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "harmonic/json_io.hpp"
#include "harmonic/nt.hpp"

namespace harmonic::cli {

namespace {

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Parse:
        case ErrorKind::Pole:
        case ErrorKind::Precision:
            return 1;
        case ErrorKind::UnsupportedModulus:
        case ErrorKind::ConductorCap:
            return 2;
        default:
            return 3;
    }
}

std::string render_coeff_text(const CyclotomicNumber& c) {
    if (c.is_rational()) return c.rational_value().get_str();
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c.coords().size(); ++i) {
        if (i) os << ",";
        os << c.coords()[i].get_str();
    }
    os << "]@" << c.conductor();
    return os.str();
}

std::string render_atom_text(const LogAtom& a) {
    switch (a.kind) {
        case LogAtom::Kind::Unit: return "1";
        case LogAtom::Kind::Pi: return "pi";
        case LogAtom::Kind::Log2: return "log2";
        case LogAtom::Kind::LogSin:
            return "logsin(" + std::to_string(a.k) + "pi/" +
                   std::to_string(a.m) + ")";
    }
    return "?";
}

std::string render_value_text(const SymbolicValue& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [atom, coeff] : v.terms()) {
        if (!first) os << " + ";
        first = false;
        os << render_coeff_text(coeff) << "*" << render_atom_text(atom);
    }
    return os.str();
}

void emit(const Json& doc, const RunConfig& cfg, std::ostream& out,
          const std::string& text) {
    if (cfg.format == "text") {
        out << text;
    } else {
        out << doc.dump(2) << "\n";
    }
}

struct CheckCase {
    std::string name;
    bool pass = false;
    std::string detail;
};

using Suite = std::vector<CheckCase>;

PrecisionConfig precision_of(const RunConfig& cfg) {
    return PrecisionConfig(cfg.digits, 20);
}

BigFloat tolerance(unsigned digits, unsigned slack) {
    return pow10(-static_cast<long>(digits - slack),
                 BigFloat::bits_for_digits(digits));
}

// --- suite: nested radical identities ------------------------------------

Suite check_radicals(const RunConfig& cfg) {
    Suite suite;
    const unsigned digits = std::max(cfg.digits, 60u);
    const PrecisionConfig p(digits, 20);
    const BigFloat tol = tolerance(60, 10);  // pinned 1e-50 gate
    for (unsigned n = 2; n <= 6; ++n) {
        const unsigned m = 1u << n;
        BigFloat worst(p.working_bits());
        bool in_range = true;
        for (unsigned k = 1; k < m; k += 2) {
            const SignSequence s = nested_radical_signs(k, n);
            const BigFloat radical = eval_sign_sequence(s, digits);
            const BigFloat angle = mul_rational(
                BigFloat::pi(p.working_bits()), Rational(k, m));
            const BigFloat diff = abs(radical - sin(angle));
            if (worst < diff) worst = diff;
            const BigFloat one(1, p.working_bits());
            if (!(radical > BigFloat(0, p.working_bits())) || !(radical < one)) {
                in_range = false;
            }
        }
        CheckCase c;
        c.name = "radical denominator 2^" + std::to_string(n);
        c.pass = in_range && worst < tol;
        c.detail = "max |radical - sin| = " + worst.to_sci_string(2);
        suite.push_back(std::move(c));
    }
    return suite;
}

// --- suite: power-of-two log-sin reduction --------------------------------

Suite check_pow2_reduction(const RunConfig& cfg) {
    Suite suite;
    const PrecisionConfig p = precision_of(cfg);
    const BigFloat tol = tolerance(cfg.digits, 10);
    for (unsigned m : {8u, 16u, 32u, 64u}) {
        BigFloat worst(p.working_bits());
        bool canonical = true;
        for (unsigned k = 1; k < m; ++k) {
            const SymbolicValue v = reduce_log_sin(k, m);
            for (const auto& [atom, c] : v.terms()) {
                if (!atom.is_canonical()) canonical = false;
            }
            const BigFloat lhs = eval_symbolic(v, p);
            const BigFloat angle = mul_rational(
                BigFloat::pi(p.working_bits()), Rational(k, m));
            const BigFloat diff = abs(lhs - log(sin(angle)));
            if (worst < diff) worst = diff;
        }
        CheckCase c;
        c.name = "pow2 reduction m=" + std::to_string(m);
        c.pass = canonical && worst < tol;
        c.detail = "max error = " + worst.to_sci_string(2);
        suite.push_back(std::move(c));
    }
    return suite;
}

// --- suite: log of an odd prime power as a sine product -------------------

Suite check_log_products(const RunConfig& cfg) {
    Suite suite;
    const PrecisionConfig p = precision_of(cfg);
    const BigFloat tol = tolerance(cfg.digits, 10);
    for (unsigned q = 3; q <= 25; q += 2) {
        const ModulusInfo info = classify_modulus(q);
        CheckCase c;
        c.name = "log product q=" + std::to_string(q);
        if (info.shape != ModulusShape::OddPrimePower) {
            try {
                expand_log_integer(q);
                c.pass = false;
                c.detail = "expected modulus rejection";
            } catch (const Error& e) {
                c.pass = e.kind() == ErrorKind::UnsupportedModulus;
                c.detail = "rejected (two odd prime factors)";
            }
            suite.push_back(std::move(c));
            continue;
        }
        const SymbolicValue v = expand_log_integer(q);
        // rebuild the identity and cancel it exactly
        SymbolicValue rebuilt = SymbolicValue::rational_multiple(
            LogAtom::log2(), Rational(static_cast<long>(q) - 1));
        for (unsigned k = 1; k <= (q - 1) / 2; ++k) {
            rebuilt = rebuilt + reduce_log_sin(k, q).scaled(Rational(2));
        }
        const bool symbolic_zero = is_zero(v - rebuilt);
        const BigFloat lhs = eval_symbolic(v, p);
        const BigFloat ref = log(BigFloat(Rational(q), p.working_bits()));
        const BigFloat diff = abs(lhs - ref);
        c.pass = symbolic_zero && diff < tol;
        c.detail = "|value - log q| = " + diff.to_sci_string(2);
        suite.push_back(std::move(c));
    }
    return suite;
}

// --- suite: half-modulus fold (2q reduction) ------------------------------

Suite check_half_fold(const RunConfig& cfg) {
    Suite suite;
    // termination of the index iteration j -> 2q - 2j, exhaustively
    {
        unsigned worst_steps = 0;
        unsigned worst_q = 0;
        bool ok = true;
        for (unsigned q = 5; q <= 1000; q += 2) {
            if (q % 3 == 0) continue;
            const unsigned bound =
                static_cast<unsigned>(std::ceil(std::log2(q))) + 2;
            for (unsigned j = (q + 1) / 2; j <= q - 1; ++j) {
                const unsigned steps = half_fold_iteration_steps(j, q);
                if (steps > worst_steps) {
                    worst_steps = steps;
                    worst_q = q;
                }
                if (steps > bound) ok = false;
            }
        }
        CheckCase c;
        c.name = "fold termination, odd q <= 1000, 3 does not divide q";
        c.pass = ok;
        c.detail = "max steps " + std::to_string(worst_steps) + " at q=" +
                   std::to_string(worst_q);
        suite.push_back(std::move(c));
    }
    // numeric agreement of the full reduction at doubled prime powers
    const PrecisionConfig p = precision_of(cfg);
    const BigFloat tol = tolerance(cfg.digits, 10);
    BigFloat worst(p.working_bits());
    unsigned count = 0;
    for (unsigned q = 5; q <= 1000; q += 2) {
        const ModulusInfo info = classify_modulus(q);
        if (info.shape != ModulusShape::OddPrimePower || info.prime == 3) {
            continue;
        }
        const unsigned m = 2 * q;
        for (unsigned j = 1; j <= q - 1; ++j) {
            const SymbolicValue v = reduce_log_sin(j, m);
            const BigFloat lhs = eval_symbolic(v, p);
            const BigFloat angle = mul_rational(
                BigFloat::pi(p.working_bits()), Rational(j, m));
            const BigFloat diff = abs(lhs - log(sin(angle)));
            if (worst < diff) worst = diff;
            ++count;
        }
    }
    CheckCase c;
    c.name = "fold reduction vs numerics, doubled prime powers q <= 1000";
    c.pass = worst < tol;
    c.detail = std::to_string(count) + " indices, max error = " +
               worst.to_sci_string(2);
    suite.push_back(std::move(c));
    return suite;
}

// --- suite: distribution relation at odd prime powers ---------------------

Suite check_distribution(const RunConfig& cfg) {
    Suite suite;
    const PrecisionConfig p = precision_of(cfg);
    const BigFloat tol = tolerance(cfg.digits, 10);
    for (unsigned m : {9u, 25u, 27u, 49u, 121u}) {
        BigFloat worst(p.working_bits());
        unsigned count = 0;
        for (unsigned k = 1; k < m; ++k) {
            if (nt::gcd(k, m) == 1) continue;
            const SymbolicValue v = reduce_log_sin(k, m);
            const BigFloat lhs = eval_symbolic(v, p);
            const BigFloat angle = mul_rational(
                BigFloat::pi(p.working_bits()), Rational(k, m));
            const BigFloat diff = abs(lhs - log(sin(angle)));
            if (worst < diff) worst = diff;
            ++count;
        }
        CheckCase c;
        c.name = "distribution m=" + std::to_string(m);
        c.pass = worst < tol;
        c.detail = std::to_string(count) + " non-coprime indices, max error = " +
                   worst.to_sci_string(2);
        suite.push_back(std::move(c));
    }
    return suite;
}

// --- suite: heuristic multiplicative independence --------------------------

Suite check_independence(const RunConfig& cfg) {
    Suite suite;
    const PrecisionConfig p = precision_of(cfg);
    const mpfr_prec_t prec = p.working_bits();
    // positive control first: the search must find a planted relation
    {
        std::vector<BigFloat> logs;
        logs.push_back(log(BigFloat(2, prec)));
        logs.push_back(log(BigFloat(4, prec)));
        auto rel = integer_relation(logs, cfg.max_coeff, p);
        CheckCase c;
        c.name = "search finds log 4 = 2 log 2";
        c.pass = rel.has_value() && rel->size() == 2 && (*rel)[0] == 2 &&
                 (*rel)[1] == -1;
        c.detail = rel ? "found" : "missed";
        suite.push_back(std::move(c));
    }
    for (unsigned q : {5u, 7u, 8u, 11u}) {
        std::vector<std::pair<unsigned, unsigned>> units;
        std::string members;
        for (unsigned k = 1; 2 * k < q; ++k) {
            if (nt::gcd(k, q) != 1) continue;
            units.emplace_back(k, q);
            if (!members.empty()) members += ",";
            members += std::to_string(k);
        }
        CheckCase c;
        c.name = "independence of {2 sin(k pi/" + std::to_string(q) +
                 ")}, k=" + members;
        try {
            const IndependenceCheck ic =
                check_sine_independence(units, cfg.max_coeff, p);
            c.pass = !ic.relation_found();
            c.detail = ic.relation_found()
                           ? "relation found (unexpected)"
                           : "no relation up to coefficient bound " +
                                 std::to_string(cfg.max_coeff) +
                                 " (heuristic, not a proof)";
        } catch (const Error& e) {
            c.pass = false;
            c.detail = e.what();
        }
        suite.push_back(std::move(c));
    }
    return suite;
}

Suite run_suite(const std::string& selector, const RunConfig& cfg) {
    if (selector == "3.3") return check_radicals(cfg);
    if (selector == "3.4") return check_pow2_reduction(cfg);
    if (selector == "3.7") return check_log_products(cfg);
    if (selector == "3.8") return check_half_fold(cfg);
    if (selector == "3.9") return check_distribution(cfg);
    if (selector == "independence") return check_independence(cfg);
    if (selector == "all") {
        Suite all;
        for (const char* s : {"3.3", "3.4", "3.7", "3.8", "3.9",
                              "independence"}) {
            Suite part = run_suite(s, cfg);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    fail(ErrorKind::Parse, "unknown check selector \"" + selector + "\"");
}

}  // namespace

int run_decompose(const std::string& fraction, const RunConfig& cfg,
                  std::ostream& out, std::ostream& err) {
    try {
        const HarmonicIndex idx = HarmonicIndex::parse(fraction);
        const SymbolicValue value = harmonic_symbolic(idx, cfg.conductor_cap);
        const PrecisionConfig p = precision_of(cfg);
        const BigFloat residual =
            abs(harmonic_numeric(idx, p) - eval_symbolic(value, p));

        Json doc;
        doc["schema"] = 1;
        doc["command"] = "decompose";
        doc["index"] = idx.to_string();
        doc["digits"] = cfg.digits;
        doc["value"] = to_json(value);
        doc["residual"] = residual.to_sci_string(2);

        std::ostringstream text;
        text << "H(" << idx.to_string() << ") = " << render_value_text(value)
             << "\n"
             << "numeric residual " << residual.to_sci_string(2) << " at "
             << cfg.digits << " digits\n";
        emit(doc, cfg, out, text.str());
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

int run_dim(const std::string& primes_csv, const std::string& indices_csv,
            const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (primes_csv.empty() == indices_csv.empty()) {
            fail(ErrorKind::Parse,
                 "dim: give exactly one of --primes or --indices");
        }
        const PrecisionConfig p = precision_of(cfg);
        Json doc;
        doc["schema"] = 1;
        doc["command"] = "dim";
        std::ostringstream text;

        const auto split = [](const std::string& csv) {
            std::vector<std::string> parts;
            std::istringstream is(csv);
            std::string item;
            while (std::getline(is, item, ',')) parts.push_back(item);
            return parts;
        };

        if (!primes_csv.empty()) {
            std::vector<unsigned> primes;
            for (const auto& s : split(primes_csv)) {
                size_t used = 0;
                unsigned long v = 0;
                try {
                    v = std::stoul(s, &used);
                } catch (...) {
                    fail(ErrorKind::Parse, "bad prime \"" + s + "\"");
                }
                if (used != s.size() || v == 0) {
                    fail(ErrorKind::Parse, "bad prime \"" + s + "\"");
                }
                primes.push_back(static_cast<unsigned>(v));
            }
            const DimWResult r = dim_w(primes, p, cfg.conductor_cap);
            Json jprimes = Json::array();
            for (unsigned q : primes) jprimes.push_back(q);
            doc["primes"] = jprimes;
            doc["digits"] = cfg.digits;
            doc["dim"] = r.dim;
            doc["formula"] = r.formula ? Json(*r.formula) : Json(nullptr);
            doc["match"] = r.match ? Json(*r.match) : Json("n/a");
            Json rels = Json::array();
            for (const auto& rel : r.span.relations) rels.push_back(to_json(rel));
            doc["relations"] = rels;

            text << "dim = " << r.dim << "\n";
            if (r.formula) {
                text << "formula = " << *r.formula << " ("
                     << (*r.match ? "match" : "MISMATCH") << ")\n";
            } else {
                text << "formula = n/a (2 in the prime set)\n";
            }
            text << r.span.relations.size() << " relation(s), residuals at "
                 << cfg.digits << " digits\n";
        } else {
            std::vector<HarmonicIndex> indices;
            for (const auto& s : split(indices_csv)) {
                indices.push_back(HarmonicIndex::parse(s));
            }
            const SpanResult r = span_dimension(indices, p, cfg.conductor_cap);
            doc["indices"] = Json::array();
            for (const auto& idx : r.indices) {
                doc["indices"].push_back(idx.to_string());
            }
            doc["digits"] = cfg.digits;
            doc["dropped_duplicates"] = r.dropped_duplicates;
            doc["dim"] = r.dim;
            doc["formula"] = Json(nullptr);
            doc["match"] = "n/a";
            Json rels = Json::array();
            for (const auto& rel : r.relations) rels.push_back(to_json(rel));
            doc["relations"] = rels;
            text << "dim = " << r.dim << " (" << r.indices.size()
                 << " distinct indices, " << r.dropped_duplicates
                 << " duplicates dropped)\n"
                 << r.relations.size() << " relation(s)\n";
        }
        emit(doc, cfg, out, text.str());
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

int run_check(const std::string& selector, const RunConfig& cfg,
              std::ostream& out, std::ostream& err) {
    try {
        const Suite suite = run_suite(selector, cfg);
        size_t passed = 0;
        Json cases = Json::array();
        std::ostringstream text;
        for (const auto& c : suite) {
            if (c.pass) ++passed;
            cases.push_back(Json{{"name", c.name},
                                 {"pass", c.pass},
                                 {"detail", c.detail}});
            text << (c.pass ? "PASS " : "FAIL ") << c.name;
            if (!c.detail.empty()) text << " - " << c.detail;
            text << "\n";
        }
        Json doc;
        doc["schema"] = 1;
        doc["command"] = "check";
        doc["selector"] = selector;
        doc["digits"] = cfg.digits;
        doc["cases"] = cases;
        doc["passed"] = passed;
        doc["failed"] = suite.size() - passed;
        text << passed << "/" << suite.size() << " checks passed\n";
        emit(doc, cfg, out, text.str());
        return passed == suite.size() ? 0 : 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace harmonic::cli
