#include "cubesum/elliptic.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

#include "cubesum/arith.hpp"

namespace cubesum {

CurveQ::CurveQ(BigInt a, BigInt b) : a_(std::move(a)), b_(std::move(b)) {
    if (discriminant() == 0) throw DomainError("singular curve: 4a^3 + 27b^2 = 0");
}

BigInt CurveQ::discriminant() const { return -16 * (4 * a_ * a_ * a_ + 27 * b_ * b_); }

PointQ PointQ::from_uvw(BigInt u, BigInt v, BigInt w) {
    if (w <= 0) throw DomainError("point denominator must be positive");
    if (gcd(u, w) != 1 || gcd(v, w) != 1) throw DomainError("point is not in canonical (u/w^2, v/w^3) form");
    PointQ p;
    p.infinity_ = false;
    p.u_ = std::move(u);
    p.v_ = std::move(v);
    p.w_ = std::move(w);
    return p;
}

PointQ PointQ::from_affine(const Rational& x, const Rational& y) {
    const auto w = perfect_square(x.get_den());
    if (!w || y.get_den() != *w * *w * *w)
        throw DomainError("coordinates are not of the form (u/w^2, v/w^3)");
    return from_uvw(x.get_num(), y.get_num(), *w);
}

Rational PointQ::x() const {
    Rational r(u_, w_ * w_);
    r.canonicalize();
    return r;
}

Rational PointQ::y() const {
    Rational r(v_, w_ * w_ * w_);
    r.canonicalize();
    return r;
}

std::string PointQ::to_string() const {
    if (infinity_) return "O";
    if (w_ == 1) return "(" + u_.get_str() + ", " + v_.get_str() + ")";
    return "(" + u_.get_str() + "/" + BigInt(w_ * w_).get_str() + ", " + v_.get_str() + "/" +
           BigInt(w_ * w_ * w_).get_str() + ")";
}

bool on_curve(const CurveQ& curve, const PointQ& p) {
    if (p.is_infinity()) return true;
    const BigInt w2 = p.w() * p.w();
    const BigInt w4 = w2 * w2;
    return p.v() * p.v() == p.u() * p.u() * p.u() + curve.a() * p.u() * w4 + curve.b() * w4 * w2;
}

PointQ negate(const PointQ& p) {
    if (p.is_infinity()) return p;
    return PointQ::from_uvw(p.u(), -p.v(), p.w());
}

namespace {

PointQ add_unchecked(const CurveQ& curve, const PointQ& p, const PointQ& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    const Rational x1 = p.x(), y1 = p.y(), x2 = q.x(), y2 = q.y();
    Rational slope;
    if (x1 == x2) {
        if (y1 != y2 || y1 == 0) return PointQ::infinity();
        slope = (3 * x1 * x1 + Rational(curve.a())) / (2 * y1);
    } else {
        slope = (y2 - y1) / (x2 - x1);
    }
    const Rational x3 = slope * slope - x1 - x2;
    const Rational y3 = slope * (x1 - x3) - y1;
    return PointQ::from_affine(x3, y3);
}

PointQ mul_unchecked(const CurveQ& curve, long long n, const PointQ& p) {
    PointQ base = n < 0 ? negate(p) : p;
    unsigned long long k = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
    PointQ acc = PointQ::infinity();
    while (k) {
        if (k & 1) acc = add_unchecked(curve, acc, base);
        k >>= 1;
        if (k) base = add_unchecked(curve, base, base);
    }
    return acc;
}

void require_on_curve(const CurveQ& curve, const PointQ& p) {
    if (!on_curve(curve, p)) throw DomainError("point " + p.to_string() + " is not on the curve");
}

// Integer roots of x^3 + a x + c, by exact bisection on monotone pieces.
std::vector<BigInt> integer_roots(const BigInt& a, const BigInt& c) {
    auto g = [&](const BigInt& x) { return BigInt(x * x * x + a * x + c); };
    const BigInt bound = 1 + std::max(abs(a), abs(c));
    std::vector<BigInt> roots;
    auto search = [&](BigInt lo, BigInt hi, bool increasing) {
        while (lo <= hi) {
            const BigInt mid = (lo + hi) >> 1; // floor division for negatives
            const BigInt val = g(mid);
            if (val == 0) {
                roots.push_back(mid);
                return;
            }
            if ((val < 0) == increasing)
                lo = mid + 1;
            else
                hi = mid - 1;
        }
    };
    if (a >= 0) {
        search(-bound, bound, true);
    } else {
        const BigInt s = isqrt(BigInt(-a / 3));
        search(-bound, BigInt(-s - 1), true);
        search(BigInt(-s), s, false);
        search(BigInt(s + 1), bound, true);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

bool is_torsion(const CurveQ& curve, const PointQ& p) {
    PointQ acc = p;
    for (int n = 1; n <= 12; ++n) {
        if (acc.is_infinity()) return true;
        if (n < 12) acc = add_unchecked(curve, acc, p);
    }
    return false;
}

Rational f_quartic(const Rational& x, long middle) {
    const Rational x2 = x * x;
    const Rational c2 = Rational(BigInt(62209) * 62209);
    return x2 * (x2 * x2 - 6 * middle * x2 + c2);
}

} // namespace

PointQ add(const CurveQ& curve, const PointQ& p, const PointQ& q) {
    require_on_curve(curve, p);
    require_on_curve(curve, q);
    return add_unchecked(curve, p, q);
}

PointQ mul(const CurveQ& curve, long long n, const PointQ& p) {
    require_on_curve(curve, p);
    return mul_unchecked(curve, n, p);
}

PointQ lincomb(const CurveQ& curve, long long m, const PointQ& g1, long long n, const PointQ& g2, int eps,
               const PointQ& t) {
    require_on_curve(curve, g1);
    require_on_curve(curve, g2);
    require_on_curve(curve, t);
    PointQ r = add_unchecked(curve, mul_unchecked(curve, m, g1), mul_unchecked(curve, n, g2));
    if (eps != 0) r = add_unchecked(curve, r, t);
    return r;
}

std::vector<PointQ> torsion_points(const CurveQ& curve) {
    const BigInt disc = abs(BigInt(4 * curve.a() * curve.a() * curve.a() + 27 * curve.b() * curve.b()));

    std::vector<BigInt> ys{BigInt(0)};
    {
        Factorization half;
        half.value = 1;
        for (const auto& [p, e] : factorize(disc).factors) {
            if (e / 2 == 0) continue;
            half.factors.push_back({p, e / 2});
            half.value *= pow(p, e / 2);
        }
        for (auto& y : divisors(half, false)) ys.push_back(std::move(y));
    }

    std::vector<PointQ> out{PointQ::infinity()};
    for (const BigInt& y : ys) {
        for (const BigInt& x : integer_roots(curve.a(), BigInt(curve.b() - y * y))) {
            for (const BigInt& yy : y == 0 ? std::vector<BigInt>{y} : std::vector<BigInt>{y, BigInt(-y)}) {
                const PointQ p = PointQ::from_uvw(x, yy, 1);
                if (is_torsion(curve, p)) out.push_back(p);
            }
        }
    }
    std::sort(out.begin() + 1, out.end(), [](const PointQ& l, const PointQ& r) {
        if (const int c = cmp(l.u(), r.u()); c != 0) return c < 0;
        return l.v() < r.v();
    });
    return out;
}

namespace curves {

const CurveQ& k4() {
    static const CurveQ c(62209, 0);
    return c;
}

const PointQ& k4_g1() {
    static const PointQ p = PointQ::from_uvw(67600, 169584220, 51);
    return p;
}

const PointQ& k4_g2() {
    static const PointQ p = PointQ::from_uvw(BigInt("29686962975500601"), BigInt("5116943017644569380192365"),
                                             1803016);
    return p;
}

const PointQ& k4_t() {
    static const PointQ p = PointQ::from_uvw(0, 0, 1);
    return p;
}

const CurveQ& k6() {
    static const CurveQ c(0, -81);
    return c;
}

const PointQ& k6_p() {
    static const PointQ p = PointQ::from_uvw(13, 46, 1);
    return p;
}

CurveQ ed(const BigInt& d) {
    if (d < 1) throw DomainError("E_d requires d >= 1");
    return CurveQ(243 * pow(d, 8) + 1, 0);
}

} // namespace curves

std::string to_string(K4Region r) {
    switch (r) {
    case K4Region::A1: return "A1";
    case K4Region::A2: return "A2";
    case K4Region::Boundary: return "BOUNDARY";
    }
    return "?";
}

std::string to_string(BRegion r) {
    switch (r) {
    case BRegion::B1: return "B1";
    case BRegion::B2: return "B2";
    case BRegion::B3: return "B3";
    case BRegion::Outside: return "OUTSIDE";
    case BRegion::Boundary: return "BOUNDARY";
    }
    return "?";
}

K4Region k4_sign_region(const Rational& x0) {
    if (x0 == 0) return K4Region::Boundary;
    // d = 2: 81 d^8 -+ 36 d^4 - 1 = 20159, 21311; 243 d^8 + 1 = 62209.
    const int f1 = sgn(f_quartic(x0, 20159));
    const int f2 = -sgn(f_quartic(x0, 21311));
    if (f1 > 0 && f2 > 0) return K4Region::A1;
    if (f1 > 0 && f2 < 0) return K4Region::A2;
    return K4Region::Boundary;
}

BRegion b_region(const Rational& x0) {
    const Rational x3 = x0 * x0 * x0;
    const int first = sgn(Rational(3 * x0 - 9 * x3 * x0));
    const int second = sgn(Rational(9 * x3 - 1));
    if (first == 0 || second == 0) return BRegion::Boundary;
    if (first > 0 && second > 0) return BRegion::B1;
    if (first < 0 && second < 0) return BRegion::B2;
    if (first > 0 && second < 0) return BRegion::B3;
    return BRegion::Outside;
}

K4Construction k4_construct_detailed(const PointQ& pt) {
    const CurveQ& curve = curves::k4();
    require_on_curve(curve, pt);
    if (pt.is_infinity()) throw DomainError("k4_construct: point at infinity");
    if (pt.u() == 0) throw DomainError("k4_construct: torsion point T = (0,0) gives u = 0");
    if (pt.u() < 0) throw std::logic_error("k4 curve point with negative x");
    const K4Region region = k4_sign_region(pt.x());
    if (region == K4Region::Boundary) throw DomainError("k4_construct: x lies on a region boundary");

    K4Construction c;
    c.g = gcd(pt.u(), pt.v());
    c.p = pt.u() / c.g;
    c.q = pt.v() / c.g;
    c.r = pt.w();
    const BigInt p4r4 = pow(c.p, 4) * pow(c.r, 4);
    const BigInt s = c.q * c.q - 2 * c.g * pow(c.p, 3);
    c.h1 = 3464 * p4r4 + s * s;
    c.h2 = 3448 * p4r4 - s * s;
    c.h3 = -12 * c.p * s * c.r;
    c.h4 = 24 * c.p * c.p * c.q * c.r * c.r;

    const Sign sign = region == K4Region::A1 ? Sign::Plus : Sign::Minus;
    if ((c.h2 > 0) != (sign == Sign::Plus))
        throw DomainError("k4_construct: sign of h2 disagrees with the region of x");

    auto& q = c.quad;
    q.k = 4;
    q.x = abs(c.h1);
    q.y = abs(c.h2);
    q.a = abs(c.h3);
    q.b = abs(c.h4);
    q.equation_sign = sign;
    if (q.x == 0 || q.y == 0 || q.a == 0 || q.b == 0) throw DomainError("k4_construct: degenerate quadruple");
    if (combine(pow(q.x, 3), sign, pow(q.y, 3)) != pow(q.a, 4) + pow(q.b, 4))
        throw std::logic_error("k4_construct: equation does not hold");
    if (gcd(q.x, q.y, q.a, q.b) != 1) throw DomainError("k4_construct: gcd(x,y,a,b) != 1");
    return c;
}

SignedQuadruple k4_construct(const PointQ& p) { return k4_construct_detailed(p).quad; }

std::vector<GridCell> k4_grid(long long m_max, long long n_max, int eps) {
    if (m_max < 0 || n_max < 0) throw std::invalid_argument("grid bounds must be >= 0");
    const CurveQ& curve = curves::k4();
    std::vector<GridCell> out;
    PointQ row = eps ? curves::k4_t() : PointQ::infinity();
    for (long long m = 0; m <= m_max; ++m) {
        PointQ cell = row;
        for (long long n = 0; n <= n_max; ++n) {
            const K4Region region = cell.is_infinity() ? K4Region::Boundary : k4_sign_region(cell.x());
            out.push_back({m, n, eps, region});
            if (n < n_max) cell = add_unchecked(curve, cell, curves::k4_g2());
        }
        if (m < m_max) row = add_unchecked(curve, row, curves::k4_g1());
    }
    return out;
}

namespace {

K6Point k6_from(const PointQ& np) {
    K6Point k;
    k.np = np;
    const BigInt &p = np.u(), &q = np.v(), &r = np.w();
    if (p * p * p <= 81 * pow(r, 6)) throw std::logic_error("k6: expected p^3 > 81 r^6");
    k.u = 3 * r * r;
    k.v = p;
    k.w = 3 * abs(q) * r;
    Rational ratio(k.u, k.v);
    ratio.canonicalize();
    k.region = b_region(ratio);
    return k;
}

} // namespace

K6Point k6_point(unsigned n) {
    if (n < 1) throw DomainError("k6 pipeline requires n >= 1");
    return k6_from(mul_unchecked(curves::k6(), n, curves::k6_p()));
}

SignedQuadruple k6_construct(unsigned n) {
    const K6Point k = k6_point(n);
    SignedQuadruple q;
    q.k = 6;
    const BigInt mixed = k.v * (9 * k.u * k.u * k.u - k.v * k.v * k.v);
    q.a = 3 * k.u * k.u;
    q.b = k.w;
    if (k.region == BRegion::B1) {
        q.x = mixed;
        q.y = pow(k.v, 4);
        q.equation_sign = Sign::Plus;
    } else if (k.region == BRegion::B3) {
        q.x = pow(k.v, 4);
        q.y = abs(mixed);
        q.equation_sign = Sign::Minus;
    } else {
        throw DomainError("k6_construct: u_n/v_n in region " + to_string(k.region));
    }
    if (combine(pow(q.x, 3), q.equation_sign, pow(q.y, 3)) != pow(q.a, 6) + pow(q.b, 6))
        throw std::logic_error("k6_construct: equation does not hold");
    if (gcd(q.x, q.y, q.a, q.b) != 1) throw DomainError("k6_construct: gcd(x,y,a,b) != 1");
    return q;
}

K6Grid k6_grid(unsigned n_max) {
    if (n_max < 1) throw std::invalid_argument("k6_grid requires n_max >= 1");
    K6Grid g;
    PointQ acc = PointQ::infinity();
    for (unsigned n = 1; n <= n_max; ++n) {
        acc = add_unchecked(curves::k6(), acc, curves::k6_p());
        const BRegion r = k6_from(acc).region;
        if (r == BRegion::B1) g.plus.push_back(n);
        else if (r == BRegion::B3) g.minus.push_back(n);
    }
    return g;
}

namespace {

// Smallest |u| (positive first) giving a non-torsion point at this w.
std::optional<PointQ> scan_w(const BigInt& c, long long w, long long bound, const std::vector<PointQ>& torsion) {
    const BigInt wb(static_cast<long>(w));
    const BigInt cw4 = c * pow(wb, 4);
    BigInt rhs, ub;
    for (long long mag = 0; mag <= bound; ++mag) {
        for (int s : {1, -1}) {
            if (mag == 0 && s < 0) continue;
            const long long u = s * mag;
            if (u < 0 && cw4 > 0) continue;
            if (std::gcd(mag, w) != 1) continue;
            ub = static_cast<long>(u);
            rhs = ub * (ub * ub + cw4);
            if (rhs < 0 || !mpz_perfect_square_p(rhs.get_mpz_t())) continue;
            PointQ p = PointQ::from_uvw(ub, isqrt(rhs), wb);
            if (std::find(torsion.begin(), torsion.end(), p) == torsion.end()) return p;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<PointQ> ed_search_serial(const BigInt& d, long long height_bound) {
    const CurveQ curve = curves::ed(d);
    const auto torsion = torsion_points(curve);
    for (long long w = 1; w <= height_bound; ++w)
        if (auto p = scan_w(curve.a(), w, height_bound, torsion)) return p;
    return std::nullopt;
}

std::optional<PointQ> ed_search(const BigInt& d, long long height_bound) {
    const CurveQ curve = curves::ed(d);
    const auto torsion = torsion_points(curve);
    const long long block = 4LL * omp_get_max_threads();
    for (long long w0 = 1; w0 <= height_bound; w0 += block) {
        const long long count = std::min(block, height_bound - w0 + 1);
        std::vector<std::optional<PointQ>> hits(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < count; ++i)
            hits[static_cast<std::size_t>(i)] = scan_w(curve.a(), w0 + i, height_bound, torsion);
        for (auto& h : hits)
            if (h) return h;
    }
    return std::nullopt;
}

} // namespace cubesum
