#include "cubesum/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

namespace cubesum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(detail::kTrialBound + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= detail::kTrialBound; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= detail::kTrialBound; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

constexpr std::array<unsigned, 13> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

u64 low_bits(const BigInt& n) {
    return mpz_getlimbn(n.get_mpz_t(), 0);
}

bool fits_u64(const BigInt& n) {
    return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

u64 to_u64(const BigInt& n) { return low_bits(n); }

BigInt from_u64(u64 v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool mr_round64(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool mr_round(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
    BigInt x;
    const BigInt nm1 = n - 1;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

BigInt pollard_brent(const BigInt& n) {
    u64 state = low_bits(n) ^ (mpz_sizeinbase(n.get_mpz_t(), 2) << 56);
    constexpr unsigned kBatch = 128;
    for (;;) {
        const BigInt c = 1 + from_u64(splitmix64(state)) % (n - 1);
        BigInt y = from_u64(splitmix64(state)) % n;
        BigInt x, ys, q = 1, g = 1;
        auto step = [&](BigInt& v) { v = (v * v + c) % n; };
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) step(y);
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                for (u64 i = 0; i < std::min<u64>(kBatch, r - k); ++i) {
                    step(y);
                    q = q * abs(BigInt(x - y)) % n;
                }
                g = gcd(q, n);
            }
        }
        if (g == n) {
            do {
                step(ys);
                g = gcd(abs(BigInt(x - ys)), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor64(u64 n, std::map<BigInt, unsigned>& acc) {
    if (n == 1) return;
    if (detail::is_prime64(n)) {
        acc[from_u64(n)] += 1;
        return;
    }
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    if (r * r == n) {
        factor64(r, acc);
        factor64(r, acc);
        return;
    }
    const u64 d = detail::pollard_brent64(n);
    factor64(d, acc);
    factor64(n / d, acc);
}

void factor_big(const BigInt& n, std::map<BigInt, unsigned>& acc) {
    if (n == 1) return;
    if (fits_u64(n)) {
        factor64(to_u64(n), acc);
        return;
    }
    if (is_prime(n)) {
        acc[n] += 1;
        return;
    }
    if (auto r = perfect_square(n)) {
        factor_big(*r, acc);
        factor_big(*r, acc);
        return;
    }
    const BigInt d = pollard_brent(n);
    factor_big(d, acc);
    factor_big(BigInt(n / d), acc);
}

// Strips primes <= kTrialBound from n into acc; returns the cofactor.
BigInt trial_divide(BigInt n, std::map<BigInt, unsigned>& acc) {
    for (std::uint32_t p : small_primes()) {
        if (BigInt(p) * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
            acc[BigInt(p)] += e;
        }
    }
    return n;
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& acc) {
    BigInt rest = trial_divide(n, acc);
    if (rest == 1) return;
    const BigInt bound = BigInt(detail::kTrialBound) * detail::kTrialBound;
    if (rest < bound) {
        acc[rest] += 1;
        return;
    }
    factor_big(rest, acc);
}

// Exact quotient of num by a monic divisor (coefficients low to high).
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    const std::size_t dd = den.size() - 1;
    std::vector<BigInt> quot(num.size() - dd, BigInt(0));
    for (std::size_t i = num.size(); i-- > dd;) {
        const BigInt c = num[i];
        quot[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    return quot;
}

Factorization from_map(const BigInt& value, const std::map<BigInt, unsigned>& acc) {
    Factorization f;
    f.value = value;
    f.factors.reserve(acc.size());
    for (const auto& [p, e] : acc) f.factors.push_back({p, e});
    return f;
}

} // namespace

namespace detail {

bool is_prime64(u64 n) {
    if (n < 2) return false;
    for (unsigned p : kBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (unsigned a : kBases)
        if (!mr_round64(n, a, d, s)) return false;
    return true;
}

u64 pollard_brent64(u64 n) {
    if (n % 2 == 0) return 2;
    u64 state = n;
    constexpr u64 kBatch = 128;
    for (;;) {
        const u64 c = 1 + splitmix64(state) % (n - 1);
        u64 y = splitmix64(state) % n;
        u64 x = 0, ys = 0, q = 1, g = 1;
        auto step = [&](u64 v) { return static_cast<u64>((u128(v) * v + c) % n); };
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = step(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

} // namespace detail

BigInt Factorization::product() const {
    BigInt r = 1;
    for (const auto& pe : factors) r *= pow(pe.prime, pe.exponent);
    return r;
}

std::size_t Factorization::divisor_count() const {
    std::size_t c = 1;
    for (const auto& pe : factors) c *= pe.exponent + 1;
    return c;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt of a negative integer");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

BigInt icbrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("icbrt of a negative integer");
    BigInt r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
    return r;
}

std::optional<BigInt> perfect_square(const BigInt& n) {
    if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    return isqrt(n);
}

std::optional<BigInt> perfect_cube(const BigInt& n) {
    BigInt r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) == 0) return std::nullopt;
    return r;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return detail::is_prime64(to_u64(n));
    for (unsigned p : kBases)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    BigInt d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    for (unsigned a : kBases)
        if (!mr_round(n, BigInt(a), d, s)) return false;
    static const BigInt kDeterministicLimit("3317044064679887385961981");
    if (n < kDeterministicLimit) return true;
    u64 state = low_bits(n) * 0x2545f4914f6cdd1dULL;
    for (int i = 0; i < 24; ++i) {
        const BigInt a = 2 + from_u64(splitmix64(state)) % (n - 3);
        if (!mr_round(n, a, d, s)) return false;
    }
    return true;
}

Factorization factorize(const BigInt& n) {
    if (n <= 0) throw std::domain_error("factorize requires a positive integer, got " + to_string(n));
    std::map<BigInt, unsigned> acc;
    factor_into(n, acc);
    return from_map(n, acc);
}

Factorization factorize_product(std::span<const BigInt> parts) {
    std::map<BigInt, unsigned> acc;
    BigInt value = 1;
    for (const auto& part : parts) {
        if (part <= 0) throw std::domain_error("factorize_product requires positive parts");
        factor_into(part, acc);
        value *= part;
    }
    return from_map(value, acc);
}

std::vector<BigInt> divisors(const Factorization& f, bool include_negative) {
    std::vector<BigInt> out{BigInt(1)};
    out.reserve(f.divisor_count() * (include_negative ? 2 : 1));
    for (const auto& [p, e] : f.factors) {
        const std::size_t base = out.size();
        BigInt pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    if (include_negative) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(-out[i]);
    }
    std::sort(out.begin(), out.end(), [](const BigInt& x, const BigInt& y) {
        const int c = mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t());
        return c != 0 ? c < 0 : x < y;
    });
    return out;
}

std::vector<BigInt> cyclotomic_split(const BigInt& a, const BigInt& b, unsigned k, Sign sign) {
    if (k < 2) throw std::invalid_argument("cyclotomic_split requires k >= 2");
    if (a < 1 || b < 1) throw std::domain_error("cyclotomic_split requires a, b >= 1");
    if (sign == Sign::Minus && a <= b)
        throw std::domain_error("a^k - b^k must be positive");

    const unsigned order = sign == Sign::Minus ? k : 2 * k;
    std::vector<unsigned> ds;
    for (unsigned d = 1; d <= order; ++d)
        if (order % d == 0) ds.push_back(d);

    // Phi_d(a,b) = b^phi(d) * Phi_d(a/b); the polynomial Phi_d(x) is
    // (x^d - 1) / prod_{e | d, e < d} Phi_e(x), by exact long division.
    std::map<unsigned, std::vector<BigInt>> poly;
    std::map<unsigned, BigInt> phi;
    for (unsigned d : ds) {
        std::vector<BigInt> num(d + 1, BigInt(0));
        num[0] = -1;
        num[d] = 1;
        for (const auto& [e, pe] : poly)
            if (d % e == 0) num = divide_monic(num, pe);
        BigInt v = 0;
        const std::size_t deg = num.size() - 1;
        for (std::size_t i = 0; i <= deg; ++i)
            v += num[i] * pow(a, i) * pow(b, deg - i);
        phi.emplace(d, std::move(v));
        poly.emplace(d, std::move(num));
    }

    std::vector<BigInt> out;
    for (const auto& [d, v] : phi)
        if (sign == Sign::Minus || k % d != 0) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cubesum
