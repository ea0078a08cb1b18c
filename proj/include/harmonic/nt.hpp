#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace harmonic::nt {

// Small-integer number theory helpers. All arguments are modest (conductors,
// moduli, prime powers at desk scale), so trial division is plenty.

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

// Prime factorization as {prime -> exponent}, ascending primes.
std::map<std::uint64_t, unsigned> factor(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

bool is_prime(std::uint64_t n);

// n == 2^k with k >= 1; returns k or 0.
unsigned log2_exact(std::uint64_t n);

std::uint64_t pow_u64(std::uint64_t base, unsigned exp);

// Divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace harmonic::nt
