#pragma once

#include <iosfwd>
#include <string>

namespace harmonic::cli {

// Exit codes: 0 success, 1 usage/parse, 2 unsupported mathematics,
// 3 internal invariant violation.
struct RunConfig {
    unsigned digits = 100;
    unsigned conductor_cap = 0;  // 0 = default (4 * lcm of moduli in play)
    std::string format = "json";  // "json" or "text"
    long max_coeff = 50;          // independence search bound
};

int run_decompose(const std::string& fraction, const RunConfig& cfg,
                  std::ostream& out, std::ostream& err);

// Exactly one of primes_csv / indices_csv may be non-empty.
int run_dim(const std::string& primes_csv, const std::string& indices_csv,
            const RunConfig& cfg, std::ostream& out, std::ostream& err);

// selector: all, 3.3, 3.4, 3.7, 3.8, 3.9, independence
int run_check(const std::string& selector, const RunConfig& cfg,
              std::ostream& out, std::ostream& err);

}  // namespace harmonic::cli
