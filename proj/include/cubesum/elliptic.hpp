#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cubesum/core.hpp"

namespace cubesum {

using Rational = mpq_class;

// y^2 = x^3 + a x + b with integer coefficients and nonzero discriminant.
class CurveQ {
public:
    CurveQ(BigInt a, BigInt b);

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    // -16 (4a^3 + 27b^2)
    BigInt discriminant() const;

    bool operator==(const CurveQ&) const = default;

private:
    BigInt a_;
    BigInt b_;
};

// INFINITY, or (u/w^2, v/w^3) with w > 0 and gcd(u, w) = gcd(v, w) = 1.
class PointQ {
public:
    static PointQ infinity() { return PointQ(); }
    // Canonicalizes; throws DomainError when x, y do not have the shape
    // (u/w^2, v/w^3) of a point on an integral curve.
    static PointQ from_affine(const Rational& x, const Rational& y);
    static PointQ from_uvw(BigInt u, BigInt v, BigInt w);

    bool is_infinity() const { return infinity_; }
    const BigInt& u() const { return u_; }
    const BigInt& v() const { return v_; }
    const BigInt& w() const { return w_; }
    Rational x() const;
    Rational y() const;

    bool operator==(const PointQ&) const = default;
    std::string to_string() const;

private:
    PointQ() = default;

    bool infinity_ = true;
    BigInt u_ = 0;
    BigInt v_ = 1;
    BigInt w_ = 0;
};

bool on_curve(const CurveQ& curve, const PointQ& p);
PointQ negate(const PointQ& p);

/// Chord-tangent sum. Throws DomainError for off-curve input.
PointQ add(const CurveQ& curve, const PointQ& p, const PointQ& q);
PointQ mul(const CurveQ& curve, long long n, const PointQ& p);
/// [m]g1 + [n]g2 + [eps]t
PointQ lincomb(const CurveQ& curve, long long m, const PointQ& g1, long long n, const PointQ& g2, int eps,
               const PointQ& t);

/// Torsion subgroup: Nagell–Lutz integral candidates (y = 0 or y^2 | 4a^3 + 27b^2),
/// each kept only if [n]P = O for some n <= 12. INFINITY first, then by (x, y).
std::vector<PointQ> torsion_points(const CurveQ& curve);

// Curve data for the two construction pipelines.
namespace curves {
const CurveQ& k4();   // y^2 = x^3 + 62209 x
const PointQ& k4_g1();
const PointQ& k4_g2();
const PointQ& k4_t(); // (0, 0)
const CurveQ& k6();   // y^2 = x^3 - 81
const PointQ& k6_p(); // (13, 46)
CurveQ ed(const BigInt& d); // y^2 = x^3 + (243 d^8 + 1) x
} // namespace curves

enum class K4Region { A1, A2, Boundary };
enum class BRegion { B1, B2, B3, Outside, Boundary };

std::string to_string(K4Region r);
std::string to_string(BRegion r);

/// Signs of f1, f2 (the quartic-identity polynomials at d = 2) at x0.
K4Region k4_sign_region(const Rational& x0);

/// Signs of 3x - 9x^4 and 9x^3 - 1. Outside covers x > 3^(-1/3), where
/// the first is negative and the second positive.
BRegion b_region(const Rational& x0);

struct SignedQuadruple {
    unsigned k = 0;
    BigInt x, y, a, b;
    Sign equation_sign = Sign::Plus; // x^3 +- y^3 = a^k + b^k
};

struct K4Construction {
    SignedQuadruple quad;
    BigInt g, p, q, r;
    BigInt h1, h2, h3, h4;
};

/// Coprime solution of x^3 +- y^3 = a^4 + b^4 from a point of y^2 = x^3 + 62209x.
/// Throws DomainError for O, T, a Boundary x-coordinate or a failed gcd check.
K4Construction k4_construct_detailed(const PointQ& p);
SignedQuadruple k4_construct(const PointQ& p);

struct GridCell {
    long long m = 0;
    long long n = 0;
    int eps = 0;
    K4Region region = K4Region::Boundary;
};

/// Region of x([m]G1 + [n]G2 + [eps]T) for 0 <= m <= m_max, 0 <= n <= n_max,
/// row-major in m. (0,0,0) is O and reported as Boundary.
std::vector<GridCell> k4_grid(long long m_max, long long n_max, int eps);

struct K6Point {
    PointQ np = PointQ::infinity(); // [n]P
    BigInt u, v, w; // 3 r^2, p, 3|q| r
    BRegion region = BRegion::Boundary;
};

K6Point k6_point(unsigned n);

/// Coprime solution of x^3 +- y^3 = a^6 + b^6 from [n]P on y^2 = x^3 - 81.
SignedQuadruple k6_construct(unsigned n);

struct K6Grid {
    std::vector<unsigned> plus;  // u_n/v_n in B1
    std::vector<unsigned> minus; // u_n/v_n in B3
};

K6Grid k6_grid(unsigned n_max);

/// First non-torsion point (u/w^2, v/w^3) on E_d with |u|, w <= bound,
/// by smallest w then smallest |u| (v > 0). OpenMP over blocks of w.
std::optional<PointQ> ed_search(const BigInt& d, long long height_bound);
/// Serial reference for ed_search.
std::optional<PointQ> ed_search_serial(const BigInt& d, long long height_bound);

} // namespace cubesum
