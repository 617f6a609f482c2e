#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cubesum/core.hpp"

namespace cubesum {

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

// value = product of prime^exponent, primes strictly increasing.
struct Factorization {
    BigInt value = 1;
    std::vector<PrimePower> factors;

    BigInt product() const;
    std::size_t divisor_count() const;
};

/// Floor square root. Throws std::domain_error for n < 0.
BigInt isqrt(const BigInt& n);

/// Floor cube root of a nonnegative integer.
BigInt icbrt(const BigInt& n);

std::optional<BigInt> perfect_square(const BigInt& n);

/// Exact (signed) cube root when n is a perfect cube.
std::optional<BigInt> perfect_cube(const BigInt& n);

/// Miller–Rabin. Deterministic below 3.3e24 (first 13 prime bases);
/// above that, 24 extra bases drawn from a generator seeded by n.
bool is_prime(const BigInt& n);

/// Full factorization: trial division, then Pollard–Brent rho seeded
/// deterministically from the cofactor. Throws std::domain_error for n <= 0.
Factorization factorize(const BigInt& n);

/// Factorization of the product of the given positive parts, factoring
/// each part separately.
Factorization factorize_product(std::span<const BigInt> parts);

/// All divisors of f.value ordered by absolute value (negative first on
/// ties when include_negative is set).
std::vector<BigInt> divisors(const Factorization& f, bool include_negative);

/// Homogenized cyclotomic values Phi_d(a,b) whose product is a^k -/+ b^k:
/// d | k for Minus, d | 2k with d not dividing k for Plus. Sorted ascending.
std::vector<BigInt> cyclotomic_split(const BigInt& a, const BigInt& b, unsigned k, Sign sign);

namespace detail {
// Exposed for tests and the benchmark.
inline constexpr std::uint32_t kTrialBound = 1u << 12;
std::uint64_t pollard_brent64(std::uint64_t n);
bool is_prime64(std::uint64_t n);
} // namespace detail

} // namespace cubesum
