#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "cubesum/arith.hpp"

namespace cubesum {

// x^3 + y^3 = A with x >= y. For solve_signed results y is the positive
// magnitude and the sign is implied by the query.
struct CubePair {
    BigInt x;
    BigInt y;

    bool operator==(const CubePair& o) const { return x == o.x && y == o.y; }
    std::strong_ordering operator<=>(const CubePair& o) const {
        if (const int c = cmp(x, o.x); c != 0) return c <=> 0;
        return cmp(y, o.y) <=> 0;
    }
};

/// Every integer pair x >= y with x^3 + y^3 = A, ascending.
///
/// With d = x + y running over the signed divisors of A, the pair solves
/// x^2 - xy + y^2 = A/d, giving x, y = (3d^2 +- sqrt(3d(4A - d^3))) / (6d).
/// A divisor contributes when the discriminant is a nonnegative square and
/// both roots are integral. Throws DomainError for A = 0.
std::vector<CubePair> represent_cubes(const BigInt& A);

/// Same, reusing a known factorization of |A|.
std::vector<CubePair> represent_cubes(const BigInt& A, const Factorization& abs_factorization);

/// Positive solutions: x >= y > 0 with x^3 + y^3 = A (Plus), or
/// x > y > 0 with x^3 - y^3 = A (Minus). Requires A >= 1.
std::vector<CubePair> solve_signed(const BigInt& A, Sign sign);
std::vector<CubePair> solve_signed(const Factorization& f, Sign sign);

inline constexpr std::int64_t kBruteForceLimit = 1'000'000'000;

/// Independent oracle for represent_cubes: scans x and takes an exact cube
/// root for y. Throws std::invalid_argument when |A| > kBruteForceLimit.
std::vector<CubePair> brute_force_cubes(std::int64_t A);

} // namespace cubesum
