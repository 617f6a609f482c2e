#include "cubesum/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cubesum/arith.hpp"

namespace cubesum {

BigInt Term::evaluate() const { return coeff * pow(base, exponent); }

namespace {

using Span = std::span<const BigInt>;

BigInt max_of(const BigInt& a, const BigInt& b) { return a < b ? b : a; }

std::optional<std::string> require(bool ok, const char* why) {
    if (ok) return std::nullopt;
    return std::string(why);
}

// ---- F1: (2u^3 v)^3 + (2u v^3)^3 = (u^3 + v^3)^4 - (u^3 - v^3)^4

Identity f1_identity(Span p) {
    const BigInt &u = p[0], &v = p[1];
    const BigInt u3 = u * u * u, v3 = v * v * v;
    return {{{2 * u3 * v, 3, 1}, {2 * u * v3, 3, 1}}, {{u3 + v3, 4, 1}, {u3 - v3, 4, -1}}};
}

std::optional<std::string> f1_domain(Span p) {
    const BigInt &u = p[0], &v = p[1];
    if (auto e = require(v >= 1 && u > v, "need u > v >= 1")) return e;
    if (auto e = require(gcd(u, v) == 1, "need gcd(u, v) = 1")) return e;
    return require(mpz_odd_p(BigInt(u - v).get_mpz_t()) != 0, "need u, v of different parity");
}

BigInt f1_floor(Span p) {
    const BigInt &u = p[0], &v = p[1];
    return 8 * pow(u, 3) * pow(v, 3) * (pow(u, 6) + pow(v, 6));
}

// ---- F2: t-family for x^3 - y^3 = a^4 - b^4

Identity f2_identity(Span p) {
    const BigInt& t = p[0];
    const BigInt t2 = t * t, t3 = t2 * t;
    return {{{15 * t3 + 33 * t2 + 21 * t + 4, 3, 1}, {15 * t3 + 12 * t2 - 1, 3, -1}},
            {{3 * (2 * t + 1) * (2 * t + 1), 4, 1}, {(3 * t + 1) * (3 * t + 2), 4, -1}}};
}

std::optional<std::string> f2_domain(Span p) { return require(p[0] >= 1, "need t >= 1"); }

BigInt f2_floor(Span p) {
    const BigInt a = 3 * (2 * p[0] + 1) * (2 * p[0] + 1);
    return a * a * a;
}

// ---- F3: Mahler, (3u^2)^6 + (3u(v^3 - 3u^3))^3 = (v(9u^3 - v^3))^3 + (v^2)^6

Identity mahler(const BigInt& u, const BigInt& v) {
    const BigInt u3 = u * u * u, v3 = v * v * v;
    return {{{3 * u * u, 6, 1}, {3 * u * (v3 - 3 * u3), 3, 1}},
            {{v * (9 * u3 - v3), 3, 1}, {v * v, 6, 1}}};
}

Identity f3_identity(Span p) { return mahler(p[0], p[1]); }

std::optional<std::string> f3_domain(Span p) {
    const BigInt &u = p[0], &v = p[1];
    if (auto e = require(u >= 1 && v >= 1, "need u, v >= 1")) return e;
    if (auto e = require(gcd(u, v) == 1, "need gcd(u, v) = 1")) return e;
    return require(!mpz_divisible_ui_p(v.get_mpz_t(), 3), "need 3 not dividing v");
}

// value = |S^6 - P^6| >= max(S, P)^5 since |S - P| >= 1
BigInt f3_floor(Span p) { return pow(max_of(p[1] * p[1], 3 * p[0] * p[0]), 5); }

// ---- F3b: v replaced by 3v, divided by 3^6

Identity f3b_identity(Span p) {
    const BigInt &u = p[0], &v = p[1];
    const BigInt u3 = u * u * u, v3 = v * v * v;
    return {{{u * u, 6, 1}, {u * (9 * v3 - u3), 3, 1}},
            {{3 * v * (u3 - 3 * v3), 3, 1}, {3 * v * v, 6, 1}}};
}

std::optional<std::string> f3b_domain(Span p) {
    const BigInt &u = p[0], &v = p[1];
    if (auto e = require(u >= 1 && v >= 1, "need u, v >= 1")) return e;
    if (auto e = require(gcd(u, v) == 1, "need gcd(u, v) = 1")) return e;
    return require(!mpz_divisible_ui_p(u.get_mpz_t(), 3), "need 3 not dividing u");
}

BigInt f3b_floor(Span p) { return pow(max_of(p[0] * p[0], 3 * p[1] * p[1]), 5); }

// ---- F4 / F5: Mahler along u = 3t+1, v = 6t+1 and u = t, v = 3t+1

Identity f4_identity(Span p) { return mahler(3 * p[0] + 1, 6 * p[0] + 1); }
Identity f5_identity(Span p) { return mahler(p[0], 3 * p[0] + 1); }
std::optional<std::string> t_positive(Span p) { return require(p[0] >= 1, "need t >= 1"); }
BigInt f4_floor(Span p) { return pow(BigInt(6 * p[0] + 1), 10); }
BigInt f5_floor(Span p) { return pow(BigInt(3 * p[0] + 1), 10); }

// ---- F6 / F7: k = 6(2m+1), common value (3x^2)^k - 1

struct K6m {
    BigInt k, lead, mid;
};

// lead = 3^(3m+2) x^(3(2m+1)), mid = 3^(m+1) x^(2m+1), low = 3^(3m+1) x^(3(2m+1))
K6m k6m_parts(const BigInt& m_big, const BigInt& x) {
    const unsigned long m = m_big.get_ui();
    const unsigned long e = 2 * m + 1;
    return {BigInt(6 * e), pow(BigInt(3), 3 * m + 2) * pow(x, 3 * e), pow(BigInt(3), m + 1) * pow(x, e)};
}

Identity f6_identity(Span p) {
    const auto [k, lead, mid] = k6m_parts(p[0], p[1]);
    const BigInt low = lead / 3;
    const unsigned ku = static_cast<unsigned>(k.get_ui());
    return {{{lead - 1, 3, 1}, {mid * (low - 1), 3, 1}}, {{3 * p[1] * p[1], ku, 1}, {1, ku, -1}}};
}

Identity f7_identity(Span p) {
    const auto [k, lead, mid] = k6m_parts(p[0], p[1]);
    const BigInt low = lead / 3;
    const unsigned ku = static_cast<unsigned>(k.get_ui());
    return {{{mid * (low + 1), 3, 1}, {lead + 1, 3, -1}}, {{3 * p[1] * p[1], ku, 1}, {1, ku, -1}}};
}

std::optional<std::string> k6m_domain(Span p) {
    if (auto e = require(p[0] >= 0 && p[0] <= 1000, "need 0 <= m <= 1000")) return e;
    return require(p[1] >= 1, "need x >= 1");
}

BigInt k6m_floor(Span p) {
    const unsigned long k = 6 * (2 * p[0].get_ui() + 1);
    return pow(BigInt(3 * p[1] * p[1]), k) - 1;
}

// ---- F8: (8(9t^5+1))^3 - (8(9t^5-1))^3 = 4^5 + (12t^2)^5, gcd 4

Identity f8_identity(Span p) {
    const BigInt t5 = pow(p[0], 5);
    return {{{8 * (9 * t5 + 1), 3, 1}, {8 * (9 * t5 - 1), 3, -1}}, {{4, 5, 1}, {12 * p[0] * p[0], 5, 1}}};
}

BigInt f8_floor(Span p) { return 1024 + pow(BigInt(12 * p[0] * p[0]), 5); }

// ---- F9: (4u^7 + 108v^7)^3 + (4u^7 - 108v^7)^3 = (2u^3)^7 + (6uv^2)^7, gcd 2

Identity f9_identity(Span p) {
    const BigInt &u = p[0], &v = p[1];
    const BigInt u7 = pow(u, 7), v7 = pow(v, 7);
    return {{{4 * u7 + 108 * v7, 3, 1}, {4 * u7 - 108 * v7, 3, 1}},
            {{2 * u * u * u, 7, 1}, {6 * u * v * v, 7, 1}}};
}

std::optional<std::string> f9_domain(Span p) {
    const BigInt &u = p[0], &v = p[1];
    if (auto e = require(u >= 1 && v >= 1, "need u, v >= 1")) return e;
    if (auto e = require(mpz_odd_p(u.get_mpz_t()) != 0, "need u odd")) return e;
    if (auto e = require(gcd(u, v) == 1, "need gcd(u, v) = 1")) return e;
    // 3 | u leaves a common factor 3 in all four entries (u=3, v=1 gives gcd 18).
    if (auto e = require(!mpz_divisible_ui_p(u.get_mpz_t(), 3), "need 3 not dividing u")) return e;
    return require(pow(u, 7) > 27 * pow(v, 7), "need u/v > 3^(3/7), i.e. u^7 > 27 v^7");
}

BigInt f9_floor(Span p) { return pow(BigInt(2 * pow(p[0], 3)), 7) + pow(BigInt(6 * p[0] * p[1] * p[1]), 7); }

// ---- F10: f1^3 + f2^3 = g1^4 + g2^2

struct Quartic {
    BigInt f1, f2, g1, g2;
};

Quartic quartic_polys(const BigInt& d, const BigInt& x) {
    const BigInt d4 = pow(d, 4), d8 = d4 * d4;
    const BigInt c = 243 * d8 + 1;
    const BigInt x2 = x * x, x4 = x2 * x2;
    return {x2 * (x4 - 6 * (81 * d8 - 36 * d4 - 1) * x2 + c * c),
            -x2 * (x4 - 6 * (81 * d8 + 36 * d4 - 1) * x2 + c * c),
            6 * d * x2 * (x2 - c),
            144 * d * d * x2 * x2 * x * (x2 + c)};
}

Identity f10_identity(Span p) {
    const auto q = quartic_polys(p[0], p[1]);
    return {{{q.f1, 3, 1}, {q.f2, 3, 1}}, {{q.g1, 4, 1}, {q.g2, 2, 1}}};
}

std::optional<std::string> f10_domain(Span p) {
    if (auto e = require(p[0] >= 1 && p[1] >= 1, "need d, x >= 1")) return e;
    const auto q = quartic_polys(p[0], p[1]);
    if (auto e = require(q.f1 > 0 && q.f2 > 0, "need f1(x) > 0 and f2(x) > 0")) return e;
    return require(q.g1 != 0, "need x^2 != 243 d^8 + 1");
}

BigInt f10_floor(Span p) {
    const auto q = quartic_polys(p[0], p[1]);
    return q.g2 * q.g2;
}

std::vector<FamilyDescriptor> build_table() {
    using enum Sign;
    std::vector<FamilyDescriptor> t;
    t.push_back({"F1", "k4-plus-minus", "4", {{Plus, Minus}}, {"u", "v"}, {2, 1},
                 "u > v >= 1, gcd(u,v) = 1, u and v of different parity", 1,
                 f1_identity, f1_domain, f1_floor});
    t.push_back({"F2", "k4-minus-minus", "4", {{Minus, Minus}}, {"t"}, {1}, "t >= 1", 1,
                 f2_identity, f2_domain, f2_floor});
    t.push_back({"F3", "k6-mahler", "6", std::nullopt, {"u", "v"}, {1, 1},
                 "gcd(u,v) = 1, 3 does not divide v", 1, f3_identity, f3_domain, f3_floor});
    t.push_back({"F3b", "k6-mahler-3div", "6", std::nullopt, {"u", "v"}, {1, 1},
                 "gcd(u,v) = 1, 3 does not divide u", 1, f3b_identity, f3b_domain, f3b_floor});
    t.push_back({"F4", "k6-minus-minus", "6", {{Minus, Minus}}, {"t"}, {1}, "t >= 1 (u = 3t+1, v = 6t+1)", 1,
                 f4_identity, t_positive, f4_floor});
    t.push_back({"F5", "k6-plus-minus", "6", {{Plus, Minus}}, {"t"}, {1}, "t >= 1 (u = t, v = 3t+1)", 1,
                 f5_identity, t_positive, f5_floor});
    t.push_back({"F6", "k6m-plus-minus", "6(2m+1)", {{Plus, Minus}}, {"m", "x"}, {0, 1}, "m >= 0, x >= 1", 1,
                 f6_identity, k6m_domain, k6m_floor});
    t.push_back({"F7", "k6m-minus-minus", "6(2m+1)", {{Minus, Minus}}, {"m", "x"}, {0, 1}, "m >= 0, x >= 1", 1,
                 f7_identity, k6m_domain, k6m_floor});
    t.push_back({"F8", "k5-gcd4", "5", {{Minus, Plus}}, {"t"}, {1}, "t >= 1", 4,
                 f8_identity, f2_domain, f8_floor});
    t.push_back({"F9", "k7-gcd2", "7", {{Plus, Plus}}, {"u", "v"}, {1, 1},
                 "u odd, 3 does not divide u, gcd(u,v) = 1, u^7 > 27 v^7", 2,
                 f9_identity, f9_domain, f9_floor});
    t.push_back({"F10", "quartic-square-identity", "4 (b squared)", {{Plus, Plus}}, {"d", "x"}, {1, 1},
                 "d, x >= 1 with f1(x) > 0, f2(x) > 0, x^2 != 243 d^8 + 1", 0,
                 f10_identity, f10_domain, f10_floor});
    return t;
}

std::vector<BigInt> to_big(const Params& p) {
    std::vector<BigInt> out;
    out.reserve(p.size());
    for (long long v : p) out.emplace_back(static_cast<long>(v));
    return out;
}

BigInt sum(const std::vector<Term>& terms) {
    BigInt s = 0;
    for (const auto& t : terms) s += t.evaluate();
    return s;
}

// Moves the two cubes to the left and the two higher powers to the right,
// then orients both sides so every entry is positive and the value is > 0.
FamilyInstance rearrange(const FamilyDescriptor& fam, const Params& params, const Identity& id) {
    struct Signed {
        BigInt magnitude;
        unsigned exponent;
        int sign;
    };
    std::vector<Signed> cubes, powers;
    auto collect = [&](const std::vector<Term>& terms, int side) {
        for (const auto& t : terms) {
            if (t.base == 0) throw DomainError(fam.name + ": a term of the identity vanishes");
            const int base_sign = (t.exponent % 2 == 1) ? sgn(t.base) : 1;
            if (t.exponent == 3)
                cubes.push_back({abs(t.base), 3, side * t.coeff * base_sign});
            else
                powers.push_back({abs(t.base), t.exponent, -side * t.coeff * base_sign});
        }
    };
    collect(id.lhs, 1);
    collect(id.rhs, -1);
    if (cubes.size() != 2 || powers.size() != 2)
        throw std::logic_error(fam.name + ": identity is not two cubes against two powers");

    BigInt value = 0;
    for (const auto& c : cubes) value += c.sign * pow(c.magnitude, 3);
    if (value == 0) throw DomainError(fam.name + ": common value vanishes");
    if (value < 0) {
        value = -value;
        for (auto& c : cubes) c.sign = -c.sign;
        for (auto& p : powers) p.sign = -p.sign;
    }
    auto orient = [](std::vector<Signed>& v) {
        if (v[0].sign < 0) std::swap(v[0], v[1]);
    };
    orient(cubes);
    orient(powers);

    FamilyInstance inst;
    inst.family = fam.name;
    inst.params = params;
    inst.x = cubes[0].magnitude;
    inst.y = cubes[1].magnitude;
    inst.s1 = cubes[1].sign > 0 ? Sign::Plus : Sign::Minus;
    inst.a = powers[0].magnitude;
    inst.b = powers[1].magnitude;
    inst.k = powers[0].exponent;
    inst.b_exponent = powers[1].exponent;
    inst.s2 = powers[1].sign > 0 ? Sign::Plus : Sign::Minus;
    inst.value = value;
    inst.quad_gcd = gcd(inst.x, inst.y, inst.a, inst.b);

    const BigInt power_side = combine(pow(inst.a, inst.k), inst.s2, pow(inst.b, inst.b_exponent));
    if (power_side != value) throw std::logic_error(fam.name + ": rearranged identity does not balance");
    return inst;
}

void check_arity(const FamilyDescriptor& fam, const Params& params) {
    if (params.size() != fam.arity())
        throw std::invalid_argument(fam.name + " takes " + std::to_string(fam.arity()) + " parameter(s)");
}

} // namespace

const std::vector<FamilyDescriptor>& family_table() {
    static const std::vector<FamilyDescriptor> table = build_table();
    return table;
}

const FamilyDescriptor& find_family(std::string_view name) {
    for (const auto& f : family_table())
        if (f.name == name || f.key == name) return f;
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

IdentityReport verify_identity(std::string_view name, const Params& params) {
    const auto& fam = find_family(name);
    check_arity(fam, params);
    const auto big = to_big(params);
    IdentityReport r;
    r.family = fam.name;
    r.params = params;
    r.domain_violation = fam.domain(big);
    const Identity id = fam.identity(big);
    r.lhs = sum(id.lhs);
    r.rhs = sum(id.rhs);
    r.equal = r.lhs == r.rhs;
    return r;
}

FamilyInstance generate(std::string_view name, const Params& params) {
    const auto& fam = find_family(name);
    check_arity(fam, params);
    const auto big = to_big(params);
    if (auto why = fam.domain(big)) throw DomainError(fam.name + ": " + *why);
    FamilyInstance inst = rearrange(fam, params, fam.identity(big));
    if (fam.signs && (inst.s1 != fam.signs->first || inst.s2 != fam.signs->second))
        throw DomainError(fam.name + ": parameters produce a different sign pattern");
    if (fam.gcd_guarantee != 0 && inst.quad_gcd != fam.gcd_guarantee)
        throw DomainError(fam.name + ": gcd(x,y,a,b) = " + to_string(inst.quad_gcd) + ", expected " +
                          std::to_string(fam.gcd_guarantee));
    return inst;
}

std::vector<FamilyInstance> enumerate_under_bound(std::string_view name, const BigInt& N) {
    const auto& fam = find_family(name);
    std::vector<FamilyInstance> out;
    if (N < 1) return out;

    auto visit = [&](const Params& p) {
        if (fam.domain(to_big(p))) return;
        FamilyInstance inst = generate(fam.name, p);
        if (inst.value <= N) out.push_back(std::move(inst));
    };

    if (fam.arity() == 1) {
        for (long long t = fam.param_min[0]; fam.value_floor(to_big({t})) <= N; ++t) visit({t});
    } else {
        const long long lo1 = fam.param_min[1];
        for (long long p0 = fam.param_min[0]; fam.value_floor(to_big({p0, lo1})) <= N; ++p0)
            for (long long p1 = lo1; fam.value_floor(to_big({p0, p1})) <= N; ++p1) visit({p0, p1});
    }

    std::sort(out.begin(), out.end(), [](const FamilyInstance& l, const FamilyInstance& r) {
        if (const int c = cmp(l.value, r.value); c != 0) return c < 0;
        return l.params < r.params;
    });
    return out;
}

CountBound c4pm_count_bound(const BigInt& N) {
    if (N < 16) throw DomainError("c4pm_count_bound requires N >= 16");
    CountBound r;
    const BigInt q = N / 16;
    mpz_root(r.v_max.get_mpz_t(), q.get_mpz_t(), 12);
    if (r.v_max > 100'000'000) throw std::invalid_argument("N too large for the direct phi summation");

    const auto vmax = static_cast<std::size_t>(r.v_max.get_ui());
    std::vector<std::uint64_t> phi(vmax + 1);
    for (std::size_t i = 0; i <= vmax; ++i) phi[i] = i;
    for (std::size_t p = 2; p <= vmax; ++p) {
        if (phi[p] != p) continue;
        for (std::size_t m = p; m <= vmax; m += p) phi[m] -= phi[m] / p;
    }
    r.phi_sum = 0;
    for (std::size_t v = 1; v <= vmax; ++v) r.phi_sum += static_cast<unsigned long>(phi[v]);
    r.count = mpq_class(r.phi_sum, 2);
    r.count.canonicalize();

    // (N/16)^(1/6) through logarithms so that N may exceed double range.
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, N.get_mpz_t());
    const long double log_n = std::log(static_cast<long double>(mant)) + exp2 * std::log(2.0L);
    const long double root6 = std::exp((log_n - std::log(16.0L)) / 6.0L);
    r.asymptotic = static_cast<double>(3.0L / (std::numbers::pi_v<long double> * std::numbers::pi_v<long double>) *
                                       root6 / 2.0L);
    return r;
}

} // namespace cubesum
