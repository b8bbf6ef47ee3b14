#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gpd {

bool is_prime(std::uint64_t n);

/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Splits n = p^e * b with gcd(p, b) = 1; returns {e, b}.
std::pair<unsigned, std::uint64_t> split_prime_power(std::uint64_t n, std::uint64_t p);

bool is_squarefree(std::uint64_t n);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

// Overflow raises CapExceeded.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// n! / (parts[0]! ... parts[l-1]! (n - sum)!); zero when sum(parts) > n.
std::uint64_t multinomial(std::uint64_t n, std::span<const std::uint64_t> parts);

std::uint64_t factorial(std::uint64_t n);

}  // namespace gpd
