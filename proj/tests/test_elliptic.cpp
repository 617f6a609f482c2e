#include <doctest.h>

#include <random>

#include "cubesum/elliptic.hpp"

using namespace cubesum;

namespace {
const PointQ P = PointQ::from_uvw(13, 46, 1);
Rational q(const char* s) { return Rational(s); }
} // namespace

TEST_CASE("point representation") {
    const auto p = PointQ::from_affine(q("36985/8464"), q("1215181/778688"));
    CHECK(p.u() == 36985);
    CHECK(p.w() == 92);
    CHECK(p.x() == q("36985/8464"));
    CHECK_THROWS_AS(PointQ::from_affine(q("1/2"), q("1/2")), DomainError);
    CHECK_THROWS_AS(CurveQ(0, 0), DomainError);
    CHECK(PointQ::infinity().is_infinity());
}

TEST_CASE("group law on y^2 = x^3 - 81") {
    const CurveQ& E = curves::k6();
    CHECK(on_curve(E, P));
    CHECK(add(E, P, PointQ::infinity()) == P);
    CHECK(add(E, P, negate(P)).is_infinity());
    const auto two = PointQ::from_affine(q("36985/8464"), q("1215181/778688"));
    CHECK(add(E, P, P) == two);
    CHECK(mul(E, 2, P) == two);
    CHECK(mul(E, 1, P) == P);
    CHECK(mul(E, 0, P).is_infinity());
    CHECK(mul(E, -1, P) == negate(P));
    CHECK_THROWS_AS(add(E, PointQ::from_uvw(1, 1, 1), P), DomainError);

    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        const int m = static_cast<int>(rng() % 9) - 4, n = static_cast<int>(rng() % 9) - 4;
        CHECK(mul(E, m + n, P) == add(E, mul(E, m, P), mul(E, n, P)));
    }
}

TEST_CASE("associativity sample") {
    const CurveQ& E = curves::k4();
    const PointQ pts[] = {curves::k4_g1(), curves::k4_g2(), curves::k4_t(), mul(E, 2, curves::k4_g1()),
                          add(E, curves::k4_g2(), curves::k4_t())};
    for (const auto& a : pts)
        for (const auto& b : pts)
            for (const auto& c : pts) CHECK(add(E, add(E, a, b), c) == add(E, a, add(E, b, c)));
    CHECK(mul(E, 2, curves::k4_t()).is_infinity());
    CHECK(mul(E, 3, curves::k4_g1()) == add(E, mul(E, 2, curves::k4_g1()), curves::k4_g1()));
}

TEST_CASE("lincomb") {
    const CurveQ& E = curves::k4();
    const auto& g1 = curves::k4_g1();
    const auto& g2 = curves::k4_g2();
    const auto& t = curves::k4_t();
    CHECK(lincomb(E, 1, g1, 0, g2, 0, t) == PointQ::from_affine(q("67600/2601"), q("169584220/132651")));
    CHECK(lincomb(E, 0, g1, 0, g2, 1, t) == PointQ::from_uvw(0, 0, 1));
    CHECK(lincomb(E, 0, g1, 0, g2, 0, t).is_infinity());
    CHECK(on_curve(E, g2));
}

TEST_CASE("torsion") {
    const auto t4 = torsion_points(curves::k4());
    REQUIRE(t4.size() == 2);
    CHECK(t4[0].is_infinity());
    CHECK(t4[1] == PointQ::from_uvw(0, 0, 1));
    const auto t6 = torsion_points(curves::k6());
    REQUIRE(t6.size() == 1);
    CHECK(t6[0].is_infinity());
    const auto tm = torsion_points(CurveQ(-1, 0));
    CHECK(tm.size() == 4);
    for (long x : {-1L, 0L, 1L}) CHECK(std::find(tm.begin(), tm.end(), PointQ::from_uvw(x, 0, 1)) != tm.end());
    // y^2 = x^3 + 1 has torsion of order 6
    CHECK(torsion_points(CurveQ(0, 1)).size() == 6);
}

TEST_CASE("regions") {
    CHECK(k4_sign_region(250) == K4Region::A1);
    CHECK(k4_sign_region(q("67600/2601")) == K4Region::A2);
    CHECK(k4_sign_region(0) == K4Region::Boundary);
    CHECK(b_region(q("4/7")) == BRegion::B1);
    CHECK(b_region(-1) == BRegion::B2);
    CHECK(b_region(q("1/4")) == BRegion::B3);
    CHECK(b_region(1) == BRegion::Outside);
    CHECK(b_region(0) == BRegion::Boundary);
}

TEST_CASE("k4 construction") {
    const auto c = k4_construct(curves::k4_g1());
    CHECK(c.k == 4);
    CHECK(c.x == BigInt("173401648246485776962081"));
    CHECK(c.y == BigInt("173187961382386571842081"));
    CHECK(c.a == BigInt("66239528407912080"));
    CHECK(c.b == BigInt("2752392590812800"));
    CHECK(c.equation_sign == Sign::Minus);

    const auto c3 = k4_construct(mul(curves::k4(), 3, curves::k4_g1()));
    CHECK(c3.equation_sign == Sign::Plus);
    CHECK(c3.x.get_str().size() == 209);
    CHECK(c3.y.get_str().size() == 207);
    CHECK(combine(pow(c3.x, 3), Sign::Plus, pow(c3.y, 3)) == pow(c3.a, 4) + pow(c3.b, 4));

    CHECK_THROWS_AS(k4_construct(curves::k4_t()), DomainError);
    CHECK_THROWS_AS(k4_construct(PointQ::infinity()), DomainError);
}

TEST_CASE("k4 grid") {
    const auto g = k4_grid(2, 2, 0);
    REQUIRE(g.size() == 9);
    CHECK(g[0].region == K4Region::Boundary);
    auto at = [&](long long m, long long n) { return g[static_cast<std::size_t>(m * 3 + n)].region; };
    for (auto [m, n] : {std::pair{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}}) CHECK(at(m, n) == K4Region::A2);
    const auto e = [](long long m, long long n) {
        const PointQ p = lincomb(curves::k4(), m, curves::k4_g1(), n, curves::k4_g2(), 0, curves::k4_t());
        return k4_sign_region(p.x());
    };
    CHECK(e(3, 0) == K4Region::A1);
    CHECK(e(4, 2) == K4Region::A1);
}

TEST_CASE("k6 construction") {
    const auto c1 = k6_construct(1);
    CHECK(c1.x == 28561);
    CHECK(c1.y == 25402);
    CHECK(c1.a == 27);
    CHECK(c1.b == 138);
    CHECK(c1.equation_sign == Sign::Minus);

    const auto c2 = k6_construct(2);
    CHECK(c2.equation_sign == Sign::Plus);
    CHECK(c2.x == BigInt("3578403985453454495"));
    CHECK(c2.y == pow(BigInt(36985), 4));
    CHECK(c2.a == 27 * pow(BigInt(8464), 2));
    CHECK(c2.b == 335389956);
    CHECK(gcd(c2.x, c2.y, c2.a, c2.b) == 1);

    CHECK(k6_construct(3).equation_sign == Sign::Minus);
    CHECK(k6_point(1).region == BRegion::B3);
}

TEST_CASE("k6 grid") {
    const auto g = k6_grid(32);
    CHECK(g.plus == std::vector<unsigned>{2, 6, 10, 11, 15, 19, 23, 27, 31, 32});
    REQUIRE(g.minus.size() >= 7);
    CHECK(std::vector<unsigned>(g.minus.begin(), g.minus.begin() + 7) == std::vector<unsigned>{1, 3, 4, 5, 7, 8, 9});
}

TEST_CASE("ed search") {
    const auto p = ed_search(2, 70000);
    REQUIRE(p);
    CHECK(on_curve(curves::ed(2), *p));
    CHECK(p == ed_search_serial(2, 70000));
    const auto t = torsion_points(curves::ed(2));
    CHECK(std::find(t.begin(), t.end(), *p) == t.end());

    for (long d = 1; d <= 4; ++d) CHECK(ed_search(d, 300) == ed_search_serial(d, 300));
}
