// Compares the serial candidate-evaluation path against the OpenMP chunked
// path on the same instances and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "nads/gip.hpp"
#include "nads/graph.hpp"
#include "nads/heuristics.hpp"
#include "nads/oracle.hpp"
#include "nads/search.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace nads;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool same_result(const SearchResult& a, const SearchResult& b) {
    if (!(a.seeds == b.seeds) || a.score != b.score) return false;
    if (a.trace.size() != b.trace.size()) return false;
    for (std::size_t i = 0; i < a.trace.size(); ++i)
        if (a.trace[i].score != b.trace[i].score) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 1500;
    int B = argc > 2 ? std::atoi(argv[2]) : 8;
    int threads = argc > 3 ? std::atoi(argv[3]) : hardware_threads();

    GipParams params;  // defaults: theta 2/50, gamma 0.1, uniform(0.1) weights
    WeightedGraph graph = generate_synthetic(SyntheticKind::RandomAttachment, {n, 3}, 7);
    std::printf("graph: n=%d |E|=%lld   threads=%d\n", graph.node_count,
                static_cast<long long>(graph.edge_count), threads);

    SeedSet start = single_discount(graph, B).selected;

    SearchConfig serial_cfg;
    serial_cfg.threads = 0;
    auto t0 = Clock::now();
    SearchResult serial = run_nads(graph, params, serial_cfg, start);
    double serial_s = seconds_since(t0);

    SearchConfig par_cfg = serial_cfg;
    par_cfg.threads = threads;
    t0 = Clock::now();
    SearchResult parallel = run_nads(graph, params, par_cfg, start);
    double par_s = seconds_since(t0);

    std::printf("nads poll sweep   serial %8.3fs   omp %8.3fs   speedup %.2fx   match=%s\n",
                serial_s, par_s, serial_s / par_s, same_result(serial, parallel) ? "yes" : "NO");

    {
        EvalCache c1, c2;
        int gb = std::min(B, 4);
        t0 = Clock::now();
        HeuristicRanking g1 = simple_greedy(graph, params, gb, c1, 0);
        double s1 = seconds_since(t0);
        t0 = Clock::now();
        HeuristicRanking g2 = simple_greedy(graph, params, gb, c2, threads);
        double s2 = seconds_since(t0);
        std::printf("simple greedy     serial %8.3fs   omp %8.3fs   speedup %.2fx   match=%s\n",
                    s1, s2, s1 / s2, g1.selected == g2.selected ? "yes" : "NO");
    }

    {
        WeightedGraph small = generate_synthetic(SyntheticKind::RandomAttachment, {22, 2}, 11);
        t0 = Clock::now();
        OracleReport r1 = brute_force_optimum(small, params, 4, 0);
        double s1 = seconds_since(t0);
        t0 = Clock::now();
        OracleReport r2 = brute_force_optimum(small, params, 4, threads);
        double s2 = seconds_since(t0);
        bool match = r1.optimum == r2.optimum && r1.optimum_score == r2.optimum_score;
        std::printf("brute force       serial %8.3fs   omp %8.3fs   speedup %.2fx   match=%s\n",
                    s1, s2, s1 / s2, match ? "yes" : "NO");
    }
    return 0;
}
