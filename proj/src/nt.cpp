#include "harmonic/nt.hpp"

#include <algorithm>

namespace harmonic::nt {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

std::map<std::uint64_t, unsigned> factor(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (const auto& [p, e] : factor(n)) {
        result -= result / p;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    auto f = factor(n);
    return f.size() == 1 && f.begin()->second == 1;
}

unsigned log2_exact(std::uint64_t n) {
    if (n < 2) return 0;
    unsigned k = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++k;
    }
    return n == 1 ? k : 0;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace harmonic::nt
