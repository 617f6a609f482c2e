#include <doctest.h>

#include <random>

#include "cubesum/arith.hpp"

using namespace cubesum;

namespace {

// Plain trial division, independent of factorize.
std::vector<PrimePower> naive_factor(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({BigInt(static_cast<unsigned long>(p)), e});
    }
    if (n > 1) out.push_back({BigInt(static_cast<unsigned long>(n)), 1});
    return out;
}

BigInt big(const char* s) { return BigInt(s); }

} // namespace

TEST_CASE("isqrt") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(17) == 4);
    CHECK(isqrt(16) == 4);
    CHECK_THROWS_AS(isqrt(-1), std::domain_error);

    // discriminant of the 31213 example at d = 51 is negative; at d = 21+28 it is a square
    const BigInt d = 51;
    const BigInt disc51 = 3 * d * (4 * BigInt(31213) - d * d * d);
    CHECK(disc51 < 0);
    const BigInt d49 = 49;
    const BigInt disc49 = 3 * d49 * (4 * BigInt(31213) - d49 * d49 * d49);
    CHECK(perfect_square(disc49) == BigInt(3 * 49 * 7)); // 3d(x - y) for (28, 21)

    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(12345);
    for (int i = 0; i < 500; ++i) {
        const BigInt n = rng.get_z_bits(256);
        const BigInt r = isqrt(n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
}

TEST_CASE("icbrt and perfect powers") {
    CHECK(icbrt(0) == 0);
    CHECK(icbrt(26) == 2);
    CHECK(icbrt(27) == 3);
    CHECK(perfect_square(144) == BigInt(12));
    CHECK(!perfect_square(2));
    CHECK(!perfect_square(-4));
    CHECK(perfect_cube(-27) == BigInt(-3));
    CHECK(!perfect_cube(28));
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(7);
    for (int i = 0; i < 300; ++i) {
        const BigInt n = rng.get_z_bits(200);
        const BigInt r = icbrt(n);
        CHECK(r * r * r <= n);
        CHECK((r + 1) * (r + 1) * (r + 1) > n);
        CHECK(perfect_cube(r * r * r) == r);
    }
}

TEST_CASE("is_prime") {
    CHECK(!is_prime(0));
    CHECK(!is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(62207 + 0) == (naive_factor(62207).size() == 1 && naive_factor(62207)[0].exponent == 1));
    CHECK(is_prime(big("170141183460469231731687303715884105727"))); // 2^127 - 1
    CHECK(!is_prime(big("3317044064679887385961981")));              // strong pseudoprime to bases 2..37
    CHECK(!is_prime(BigInt("170141183460469231731687303715884105727") * 3));
    for (std::uint64_t n = 0; n < 5000; ++n) {
        const auto f = naive_factor(n);
        const bool prime = n >= 2 && f.size() == 1 && f[0].exponent == 1;
        CHECK(is_prime(BigInt(static_cast<unsigned long>(n))) == prime);
        CHECK(detail::is_prime64(n) == prime);
    }
}

TEST_CASE("factorize examples") {
    const auto f = factorize(31213);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower{7, 4});
    CHECK(f.factors[1] == PrimePower{13, 1});
    CHECK(f.divisor_count() == 10);
    CHECK(factorize(1).factors.empty());
    CHECK_THROWS_AS(factorize(0), std::domain_error);
    CHECK_THROWS_AS(factorize(-5), std::domain_error);

    const auto g = factorize(62209);
    CHECK(g.product() == 62209);
    CHECK(g.factors == naive_factor(62209));
}

TEST_CASE("factorize matches trial division on random 40-bit values") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t n = (rng() >> 24) + 1;
        const auto f = factorize(BigInt(static_cast<unsigned long>(n)));
        CHECK(f.factors == naive_factor(n));
        CHECK(f.product() == f.value);
    }
}

TEST_CASE("factorize large semiprimes and prime powers") {
    const BigInt p = big("1000000007"), q = big("998244353"), r = big("4294967311");
    const auto f = factorize(p * q * r * r);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == PrimePower{q, 1});
    CHECK(f.factors[1] == PrimePower{p, 1});
    CHECK(f.factors[2] == PrimePower{r, 2});

    // product beyond 64 bits
    BigInt a = BigInt(1) << 34, b = BigInt(1) << 35;
    while (!is_prime(a)) ++a;
    while (!is_prime(b)) ++b;
    const auto g = factorize(a * b * 4096);
    REQUIRE(g.factors.size() == 3);
    CHECK(g.factors[0] == PrimePower{2, 12});
    CHECK(g.factors[1] == PrimePower{a, 1});
    CHECK(g.factors[2] == PrimePower{b, 1});
}

TEST_CASE("pollard_brent64 finds a proper factor") {
    for (std::uint64_t n : {8051ULL, 10403ULL, 1000000016000000063ULL, 4295098369ULL}) {
        const std::uint64_t d = detail::pollard_brent64(n);
        CHECK(d > 1);
        CHECK(d < n);
        CHECK(n % d == 0);
    }
}

TEST_CASE("factorize_product merges parts") {
    const std::vector<BigInt> parts{12, 18, 1};
    const auto f = factorize_product(parts);
    CHECK(f.value == 216);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower{2, 3});
    CHECK(f.factors[1] == PrimePower{3, 3});
}

TEST_CASE("divisors") {
    const auto d12 = divisors(factorize(12), false);
    CHECK(d12 == std::vector<BigInt>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(factorize(31213), false).size() == 10);
    CHECK(divisors(factorize(1), true) == std::vector<BigInt>{-1, 1});
    const auto d6 = divisors(factorize(6), true);
    CHECK(d6 == std::vector<BigInt>{-1, 1, -2, 2, -3, 3, -6, 6});
}

TEST_CASE("cyclotomic_split") {
    CHECK(cyclotomic_split(2, 1, 6, Sign::Minus) == std::vector<BigInt>{1, 3, 3, 7});
    CHECK(cyclotomic_split(2, 1, 3, Sign::Plus) == std::vector<BigInt>{3, 3});

    const auto parts = cyclotomic_split(402, 51, 7, Sign::Plus);
    BigInt prod = 1;
    for (const auto& p : parts) prod *= p;
    CHECK(prod == pow(BigInt(402), 7) + pow(BigInt(51), 7));

    CHECK_THROWS(cyclotomic_split(5, 5, 4, Sign::Minus));
    CHECK(cyclotomic_split(5, 5, 4, Sign::Plus) == std::vector<BigInt>{1250});
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const BigInt a(static_cast<unsigned long>(rng() % 1000 + 2));
        const BigInt b(static_cast<unsigned long>(rng() % 1000 + 1));
        const unsigned k = static_cast<unsigned>(rng() % 11 + 2);
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            if (s == Sign::Minus && a <= b) continue;
            BigInt p = 1;
            for (const auto& x : cyclotomic_split(a, b, k, s)) p *= x;
            CHECK(p == combine(pow(a, k), s, pow(b, k)));
        }
    }
}
