// Serial reference vs OpenMP kernels, with an output-equality check.
//   bench_search [amax] [workers]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "cubesum/elliptic.hpp"
#include "cubesum/search.hpp"

using namespace cubesum;

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int main(int argc, char** argv) {
    const long long amax = argc > 1 ? std::atoll(argv[1]) : 300;
    const int workers = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
    if (amax < 2 || workers < 1) {
        std::fprintf(stderr, "usage: bench_search [amax >= 2] [workers >= 1]\n");
        return 2;
    }

    bool same = true;
    for (unsigned k : {5u, 7u}) {
        SearchConfig cfg;
        cfg.k = k;
        cfg.s1 = Sign::Minus;
        cfg.s2 = Sign::Plus;
        cfg.a_max = amax;
        cfg.workers = workers;
        std::vector<SolutionRecord> serial, parallel;
        const double ts = seconds([&] { serial = collect_search(cfg, false); });
        const double tp = seconds([&] { parallel = collect_search(cfg, true); });
        same = same && serial == parallel;
        std::printf("search k=%u (-,+) a<=%lld  serial %.3fs  parallel(%d) %.3fs  speedup %.2fx  records %zu%s\n", k,
                    amax, ts, workers, tp, ts / tp, serial.size(), serial == parallel ? "" : "  MISMATCH");
    }

    omp_set_num_threads(workers);
    for (long d : {2L, 3L}) {
        std::optional<PointQ> a, b;
        const long long bound = 2000;
        const double ts = seconds([&] { a = ed_search_serial(d, bound); });
        const double tp = seconds([&] { b = ed_search(d, bound); });
        same = same && a == b;
        std::printf("ed_search d=%ld bound=%lld  serial %.3fs  parallel(%d) %.3fs  speedup %.2fx  %s%s\n", d, bound, ts,
                    workers, tp, ts / tp, a ? a->to_string().c_str() : "none", a == b ? "" : "  MISMATCH");
    }
    return same ? 0 : 1;
}
