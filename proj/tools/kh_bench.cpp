// Benchmark comparing the OpenMP state-sum/cube kernels against the serial
// reference implementations on seeded random diagrams.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kh/bracket.hpp"
#include "kh/randgen.hpp"
#include "kh/states.hpp"

using Clock = std::chrono::steady_clock;

static double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
    int max_n = argc > 1 ? std::atoi(argv[1]) : 14;
    uint64_t seed = argc > 2 ? static_cast<uint64_t>(std::atoll(argv[2])) : 7;
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled\n");
#endif
    std::printf("%4s %10s %12s %12s %8s %6s\n", "n", "states", "parallel(s)", "serial(s)",
                "speedup", "equal");

    std::mt19937_64 rng(seed);
    for (int n = 8; n <= max_n; n += 2) {
        kh::RandomDiagramOptions opt;
        opt.max_crossings = n;
        opt.allow_bars = false;
        opt.allow_markers = false;
        kh::Diagram d;
        do {
            d = kh::random_diagram(rng, opt);
        } while (d.n() != n);

        auto t0 = Clock::now();
        kh::LaurentPoly par = kh::kauffman_bracket(d, n);
        auto t1 = Clock::now();
        kh::LaurentPoly ser = kh::kauffman_bracket_serial(d, n);
        auto t2 = Clock::now();

        auto c0 = Clock::now();
        kh::Cube cp = kh::enumerate_states(d, n);
        auto c1 = Clock::now();
        kh::Cube cs = kh::enumerate_states_serial(d, n);
        auto c2 = Clock::now();
        bool cubes_equal = cp.states.size() == cs.states.size();
        for (size_t i = 0; cubes_equal && i < cp.states.size(); ++i)
            cubes_equal = cp.states[i].gamma() == cs.states[i].gamma();

        double tp = seconds(t0, t1), ts = seconds(t1, t2);
        std::printf("%4d %10zu %12.4f %12.4f %8.2f %6s  (bracket)\n", n,
                    size_t{1} << n, tp, ts, ts / (tp > 0 ? tp : 1e-9),
                    par == ser ? "yes" : "NO");
        double cp_t = seconds(c0, c1), cs_t = seconds(c1, c2);
        std::printf("%4s %10s %12.4f %12.4f %8.2f %6s  (cube)\n", "", "", cp_t, cs_t,
                    cs_t / (cp_t > 0 ? cp_t : 1e-9), cubes_equal ? "yes" : "NO");
        if (!(par == ser) || !cubes_equal) return 1;
    }
    return 0;
}
