// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cubesum/cubic.hpp"
#include "cubesum/elliptic.hpp"
#include "cubesum/families.hpp"
#include "cubesum/search.hpp"

using namespace cubesum;
namespace fs = std::filesystem;

namespace {

struct Check {
    std::string detail;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Check&)> run;
};

CubePair cp(long x, long y) { return {BigInt(x), BigInt(y)}; }

void c1(Check& c) {
    c.expect(solve_signed(31213, Sign::Plus) == std::vector{cp(28, 21)}, "plus set");
    c.expect(solve_signed(31213, Sign::Minus) == std::vector{cp(42, 35)}, "minus set");
}

void c2(Check& c) {
    SearchConfig cfg;
    cfg.k = 7;
    cfg.s1 = Sign::Minus;
    cfg.s2 = Sign::Plus;
    cfg.a_max = 450;
    cfg.workers = 1;
    std::vector<SolutionRecord> got;
    search_range_serial(cfg, [&](const SolutionRecord& r) { got.push_back(r); });
    c.expect(got.size() == 1, "expected exactly one record, got " + std::to_string(got.size()));
    if (got.size() != 1) return;
    const auto& r = got[0];
    c.expect(r.x == 1250534 && r.y == 637445 && r.a == 402 && r.b == 51, "record " + record_to_json(r));
    c.expect(pow(BigInt(1250534), 3) - pow(BigInt(637445), 3) == pow(BigInt(51), 7) + pow(BigInt(402), 7),
             "equation");
}

void c3(Check& c) {
    std::mt19937_64 rng(3);
    for (const auto& d : family_table()) {
        int done = 0, tries = 0;
        while (done < 200 && tries < 100000) {
            ++tries;
            Params p;
            if (d.name == "F10") {
                // in-domain x lie in a window around sqrt(243 d^8 + 1)
                const long long dd = 1 + static_cast<long long>(rng() % 4);
                const long long r = isqrt(243 * pow(BigInt(static_cast<long>(dd)), 8) + 1).get_si();
                p = {dd, r - r / 5 + static_cast<long long>(rng() % static_cast<unsigned long long>(r / 2 + 1))};
            } else {
                for (std::size_t i = 0; i < d.arity(); ++i) {
                    const long long span = d.param_names[i] == "m" ? 20 : 400;
                    p.push_back(d.param_min[i] + static_cast<long long>(rng() % span));
                }
            }
            const auto rep = verify_identity(d.name, p);
            if (rep.domain_violation) continue;
            ++done;
            c.expect(rep.equal, d.name + " identity fails");
            const auto inst = generate(d.name, p);
            c.expect(combine(pow(inst.x, 3), inst.s1, pow(inst.y, 3)) == inst.value &&
                         combine(pow(inst.a, inst.k), inst.s2, pow(inst.b, inst.b_exponent)) == inst.value,
                     d.name + " rearranged instance fails");
        }
        c.expect(done == 200, d.name + ": too few in-domain points");
    }
    const auto f1 = generate("F1", {2, 1});
    c.expect(f1.x == 16 && f1.y == 4 && f1.a == 9 && f1.b == 7 && f1.value == 4160, "16^3+4^3 = 9^4-7^4 = 4160");
    const auto f2 = generate("F2", {1});
    c.expect(f2.x == 73 && f2.y == 26 && f2.a == 27 && f2.b == 20 && f2.value == 371441, "73^3-26^3 = 371441");
    const auto f6 = generate("F6", {0, 1});
    c.expect(f6.value == 728 && pow(BigInt(8), 3) + pow(BigInt(6), 3) == 728, "8^3+6^3 = 728");
    const auto f8 = generate("F8", {1});
    c.expect(f8.x == 80 && f8.y == 64 && f8.value == 249856, "80^3-64^3 = 249856");
}

void c4(Check& c) {
    const PointQ p = PointQ::from_uvw(13, 46, 1);
    const PointQ two = add(curves::k6(), p, p);
    c.expect(two.x() == Rational("36985/8464") && two.y() == Rational("1215181/778688"), two.to_string());
}

void c5(Check& c) {
    const auto q1 = k6_construct(1);
    c.expect(q1.x == 28561 && q1.y == 25402 && q1.a == 27 && q1.b == 138 && q1.equation_sign == Sign::Minus, "n=1");
    const auto q2 = k6_construct(2);
    c.expect(q2.x == BigInt("3578403985453454495") && q2.y == pow(BigInt(36985), 4) &&
                 q2.a == 27 * pow(BigInt(8464), 2) && q2.b == 335389956 && q2.equation_sign == Sign::Plus,
             "n=2");
    for (const auto& q : {q1, q2}) {
        c.expect(combine(pow(q.x, 3), q.equation_sign, pow(q.y, 3)) == pow(q.a, 6) + pow(q.b, 6), "equation");
        c.expect(gcd(q.x, q.y, q.a, q.b) == 1, "gcd");
    }
}

void c6(Check& c) {
    const auto g = k6_grid(32);
    c.expect(g.plus == std::vector<unsigned>{2, 6, 10, 11, 15, 19, 23, 27, 31, 32}, "P+ list");
    c.expect(g.minus.size() >= 7 &&
                 std::vector<unsigned>(g.minus.begin(), g.minus.begin() + 7) ==
                     std::vector<unsigned>{1, 3, 4, 5, 7, 8, 9},
             "P- list");
}

void c7(Check& c) {
    const auto q = k4_construct(curves::k4_g1());
    c.expect(to_string(q.x) == "173401648246485776962081", "x");
    c.expect(to_string(q.y) == "173187961382386571842081", "y");
    c.expect(to_string(q.a) == "66239528407912080", "a");
    c.expect(to_string(q.b) == "2752392590812800", "b");
    c.expect(q.equation_sign == Sign::Minus, "sign");
    c.expect(gcd(q.x, q.y, q.a, q.b) == 1, "gcd");
    c.expect(pow(q.x, 3) - pow(q.y, 3) == pow(q.a, 4) + pow(q.b, 4), "equation");
    const auto q3 = k4_construct(mul(curves::k4(), 3, curves::k4_g1()));
    c.expect(q3.equation_sign == Sign::Plus, "[3]G1 sign");
    c.expect(to_string(q3.x).size() == 209 && to_string(q3.y).size() == 207, "[3]G1 digit counts");
    c.expect(pow(q3.x, 3) + pow(q3.y, 3) == pow(q3.a, 4) + pow(q3.b, 4), "[3]G1 equation");
}

void c8(Check& c) {
    auto region = [](long long m, long long n) {
        const PointQ p = lincomb(curves::k4(), m, curves::k4_g1(), n, curves::k4_g2(), 0, curves::k4_t());
        return k4_sign_region(p.x());
    };
    for (auto [m, n] : {std::pair{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}})
        c.expect(region(m, n) == K4Region::A2, "(" + std::to_string(m) + "," + std::to_string(n) + ") not in P-");
    for (auto [m, n] : {std::pair{3, 0}, {4, 2}, {5, 4}})
        c.expect(region(m, n) == K4Region::A1, "(" + std::to_string(m) + "," + std::to_string(n) + ") not in P+");
}

void c9(Check& c) {
    const auto t4 = torsion_points(curves::k4());
    c.expect(t4.size() == 2 && t4[0].is_infinity() && t4[1] == PointQ::from_uvw(0, 0, 1), "62209 curve");
    const auto t6 = torsion_points(curves::k6());
    c.expect(t6.size() == 1 && t6[0].is_infinity(), "-81 curve");
}

void c10(Check& c) {
    for (std::int64_t A = 1; A <= 100000; ++A)
        if (represent_cubes(BigInt(static_cast<long>(A))) != brute_force_cubes(A)) {
            c.expect(false, "A = " + std::to_string(A));
            return;
        }
    std::mt19937_64 rng(10);
    for (int i = 0; i < 1000; ++i) {
        const auto A = static_cast<std::int64_t>(rng() % kBruteForceLimit) + 1;
        if (represent_cubes(BigInt(static_cast<long>(A))) != brute_force_cubes(A)) {
            c.expect(false, "A = " + std::to_string(A));
            return;
        }
    }
}

void c11(Check& c) {
    const auto b = c4pm_count_bound(BigInt("1000000000000000000000000000000"));
    std::ostringstream r;
    r << "ratio " << b.ratio();
    c.expect(b.ratio() >= 0.9 && b.ratio() <= 1.1, r.str());
    c.detail = c.ok ? r.str() : c.detail;
}

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void c12(Check& c) {
    // parallel/serial equivalence
    for (auto [k, s1, s2, amax] : {std::tuple{3u, Sign::Plus, Sign::Plus, 150LL}, {4u, Sign::Plus, Sign::Minus, 90LL},
                                   {5u, Sign::Minus, Sign::Plus, 70LL}}) {
        SearchConfig cfg;
        cfg.k = k;
        cfg.s1 = s1;
        cfg.s2 = s2;
        cfg.a_max = amax;
        cfg.require_coprime = cfg.require_nontrivial = false;
        const auto serial = collect_search(cfg, false);
        for (int w : {1, 2, 4}) {
            cfg.workers = w;
            c.expect(collect_search(cfg, true) == serial, "parallel/serial mismatch");
        }
    }

    // resume correctness after an interrupted run with records past the checkpoint
    const fs::path dir = fs::temp_directory_path() / ("cubesum_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    SearchConfig cfg;
    cfg.k = 3;
    cfg.s1 = Sign::Minus;
    cfg.s2 = Sign::Plus;
    cfg.a_max = 100;
    cfg.require_coprime = false;
    cfg.output_path = (dir / "full.jsonl").string();
    cfg.checkpoint_path = (dir / "full.ckpt").string();
    run_search(cfg);
    const std::string full = slurp(cfg.output_path);
    cfg.output_path = (dir / "part.jsonl").string();
    cfg.checkpoint_path = (dir / "part.ckpt").string();
    cfg.workers = 2;
    RunOptions halt;
    halt.halt_after_a = 40;
    const auto s = run_search(cfg, halt);
    {
        std::ofstream out(cfg.output_path, std::ios::app);
        for (const auto& r : collect_search(cfg, false))
            if (r.a > BigInt(static_cast<long>(s.last_completed_a))) out << record_to_json(r) << '\n';
        out << "{\"k\":3,";
    }
    RunOptions resume;
    resume.resume = true;
    run_search(cfg, resume);
    c.expect(slurp(cfg.output_path) == full, "resumed output differs from uninterrupted run");
    c.expect(verify_records(cfg.output_path).all_passed(), "resumed output fails verify");
    fs::remove_all(dir);

    // nontriviality against a 14-subset brute force
    std::mt19937 rng(12);
    for (int i = 0; i < 20000; ++i) {
        SolutionRecord r;
        r.k = 3 + rng() % 4;
        r.s1 = rng() & 1 ? Sign::Plus : Sign::Minus;
        r.s2 = rng() & 1 ? Sign::Plus : Sign::Minus;
        r.x = static_cast<long>(rng() % 8 + 1);
        r.y = static_cast<long>(rng() % 8 + 1);
        r.a = static_cast<long>(rng() % 8 + 1);
        r.b = static_cast<long>(rng() % 8 + 1);
        const BigInt t[4] = {pow(r.x, 3), combine(0, r.s1, pow(r.y, 3)), -pow(r.a, r.k),
                             -combine(0, r.s2, pow(r.b, r.k))};
        bool expect = true;
        for (int mask = 1; mask < 15; ++mask) {
            BigInt sum = 0;
            for (int j = 0; j < 4; ++j)
                if (mask >> j & 1) sum += t[j];
            if (sum == 0) expect = false;
        }
        c.expect(nontrivial_check(r) == expect, "subset checker disagrees");
    }

    // group-law associativity sample
    const CurveQ& E = curves::k4();
    const PointQ pts[] = {curves::k4_g1(), curves::k4_g2(), curves::k4_t(), mul(E, -2, curves::k4_g1())};
    for (const auto& a : pts)
        for (const auto& b : pts)
            for (const auto& d : pts) c.expect(add(E, add(E, a, b), d) == add(E, a, add(E, b, d)), "associativity");
    const CurveQ& F = curves::k6();
    const PointQ p = curves::k6_p(), p2 = mul(F, 2, p), p3 = mul(F, -3, p);
    c.expect(add(F, add(F, p, p2), p3) == add(F, p, add(F, p2, p3)), "associativity on the -81 curve");
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "worked Thue example 31213", 1, c1},
        {2, "k=7 (-,+) search to a=450 finds one record", 600, c2},
        {3, "families F1-F10 at 200 random points each", 60, c3},
        {4, "[2](13,46) on y^2=x^3-81", 1, c4},
        {5, "k=6 pipeline n=1,2", 1, c5},
        {6, "k=6 grid lists for n<=32", 60, c6},
        {7, "k=4 pipeline G1 and [3]G1", 10, c7},
        {8, "k=4 grid membership", 300, c8},
        {9, "torsion of both curves", 60, c9},
        {10, "divisor method vs brute force", 300, c10},
        {11, "counting bound ratio at N=1e30", 60, c11},
        {12, "property suites", 600, c12},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.ok && s > cr.budget_s) {
            c.ok = false;
            c.detail = "over time budget";
        }
        failed += !c.ok;
        std::printf("%s  [%2d] %-46s %8.3fs / %gs%s%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, s, cr.budget_s,
                    c.detail.empty() ? "" : "  ", c.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
