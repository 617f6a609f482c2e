#include "cubesum/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace cubesum {

std::vector<CubePair> represent_cubes(const BigInt& A) {
    if (A == 0) throw DomainError("x^3 + y^3 = 0 has the infinite solution line x = -y");
    return represent_cubes(A, factorize(abs(A)));
}

std::vector<CubePair> represent_cubes(const BigInt& A, const Factorization& f) {
    if (A == 0) throw DomainError("x^3 + y^3 = 0 has the infinite solution line x = -y");
    if (f.value != abs(A)) throw std::invalid_argument("factorization does not match |A|");

    // 3d(4A - d^3) >= 0 forces sign(d) = sign(A) and |d|^3 <= 4|A|.
    const BigInt limit = icbrt(BigInt(4 * abs(A)));
    std::vector<CubePair> out;
    for (const BigInt& d : divisors(f, true)) {
        if (mpz_cmpabs(d.get_mpz_t(), limit.get_mpz_t()) > 0) break;
        const BigInt disc = 3 * d * (4 * A - d * d * d);
        if (disc < 0) continue;
        const auto root = perfect_square(disc);
        if (!root) continue;
        const BigInt six_d = 6 * d;
        const BigInt hi = 3 * d * d + *root;
        const BigInt lo = 3 * d * d - *root;
        if (!mpz_divisible_p(hi.get_mpz_t(), six_d.get_mpz_t())) continue;
        if (!mpz_divisible_p(lo.get_mpz_t(), six_d.get_mpz_t())) continue;
        BigInt x = hi / six_d;
        BigInt y = lo / six_d;
        if (x < y) std::swap(x, y);
        out.push_back({std::move(x), std::move(y)});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<CubePair> filter_signed(std::vector<CubePair> all, Sign sign) {
    std::vector<CubePair> out;
    for (auto& p : all) {
        if (sign == Sign::Plus && p.y > 0) {
            out.push_back(std::move(p));
        } else if (sign == Sign::Minus && p.y < 0) {
            out.push_back({std::move(p.x), BigInt(-p.y)});
        }
    }
    return out;
}

} // namespace

std::vector<CubePair> solve_signed(const BigInt& A, Sign sign) {
    if (A < 1) throw DomainError("solve_signed requires A >= 1");
    return filter_signed(represent_cubes(A), sign);
}

std::vector<CubePair> solve_signed(const Factorization& f, Sign sign) {
    return filter_signed(represent_cubes(f.value, f), sign);
}

namespace {

std::int64_t floor_cbrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::cbrt(static_cast<double>(n)));
    while (r * r * r > n) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

std::vector<CubePair> brute_force_cubes(std::int64_t A) {
    if (A == 0) throw DomainError("x^3 + y^3 = 0 has the infinite solution line x = -y");
    if (A > kBruteForceLimit || A < -kBruteForceLimit)
        throw std::invalid_argument("brute_force_cubes is limited to |A| <= 1e9");

    // Work with |A|; a solution (x, y) of -|A| is (-y, -x) of |A|.
    const std::int64_t n = A < 0 ? -A : A;
    // y >= 0 gives x <= cbrt(n); y < 0 gives n >= x^3 - (x-1)^3 = 3x^2 - 3x + 1.
    std::int64_t x_max = floor_cbrt(n);
    while (3 * (x_max + 1) * x_max + 1 <= n) ++x_max;

    std::vector<CubePair> out;
    for (std::int64_t x = 1; x <= x_max; ++x) {
        const std::int64_t rest = n - x * x * x;
        const std::int64_t y = rest >= 0 ? floor_cbrt(rest) : -floor_cbrt(-rest);
        if (y * y * y != rest || y > x) continue;
        if (A > 0)
            out.push_back({BigInt(static_cast<long>(x)), BigInt(static_cast<long>(y))});
        else
            out.push_back({BigInt(static_cast<long>(-y)), BigInt(static_cast<long>(-x))});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cubesum
