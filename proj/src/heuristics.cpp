#include "nads/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "nads/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nads {

namespace {

void check_budget(int B, int n) {
    if (B < 0 || B > n) throw ValidationError("budget exceeds node count");
}

}  // namespace

HeuristicRanking single_discount(const WeightedGraph& graph, int B) {
    check_budget(B, graph.node_count);
    const int n = graph.node_count;
    HeuristicRanking r;
    std::vector<double> disc(n);
    for (int v = 0; v < n; ++v) disc[v] = graph.degree(v);
    std::vector<char> picked(n, 0);
    std::vector<int> chosen;
    r.scores = disc;
    for (int round = 0; round < B; ++round) {
        int best = -1;
        int ties = 0;
        for (int v = 0; v < n; ++v) {
            if (picked[v]) continue;
            if (best < 0 || disc[v] > disc[best]) {
                best = v;
                ties = 0;
            } else if (disc[v] == disc[best]) {
                ++ties;
            }
        }
        if (ties > 0) ++r.tie_breaks;
        picked[best] = 1;
        chosen.push_back(best);
        r.scores[best] = disc[best];
        for (int v : graph.neighbors(best))
            if (!picked[v]) disc[v] -= 1.0;
    }
    for (int v = 0; v < n; ++v)
        if (!picked[v]) r.scores[v] = disc[v];
    r.selected = SeedSet::of(std::move(chosen), B);
    return r;
}

HeuristicRanking simple_greedy(const WeightedGraph& graph, const GipParams& params,
                               int B, EvalCache& cache, int threads) {
    check_budget(B, graph.node_count);
    params.validate();
    params.require_feasible(graph.avg_edge_weight);
    const int n = graph.node_count;
    HeuristicRanking r;
    r.scores.assign(n, 0.0);
    std::vector<char> picked(n, 0);
    std::vector<int> chosen;
    double current = 0.0;

    for (int round = 0; round < B; ++round) {
        std::vector<int> candidates;
        candidates.reserve(n - round);
        for (int v = 0; v < n; ++v)
            if (!picked[v]) candidates.push_back(v);
        std::vector<double> gains(candidates.size(), 0.0);
        auto eval_candidate = [&](std::size_t i) {
            std::vector<int> trial = chosen;
            trial.push_back(candidates[i]);
            SeedSet s = SeedSet::of(std::move(trial), round + 1);
            double v;
            if (auto hit = cache.find(s.nodes)) {
                v = *hit;
            } else {
                v = propagate(graph, params, s).score;
                cache.insert(s.nodes, v);
            }
            gains[i] = v - current;
        };
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(threads, 1)) if (threads > 1)
#endif
        for (long long i = 0; i < static_cast<long long>(candidates.size()); ++i)
            eval_candidate(static_cast<std::size_t>(i));

        std::size_t best = 0;
        int ties = 0;
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            if (gains[i] > gains[best]) {
                best = i;
                ties = 0;
            } else if (gains[i] == gains[best]) {
                ++ties;
            }
        }
        if (ties > 0) ++r.tie_breaks;
        int pick = candidates[best];
        picked[pick] = 1;
        r.scores[pick] = gains[best];
        current += gains[best];
        chosen.push_back(pick);
        std::sort(chosen.begin(), chosen.end());
    }
    r.selected = SeedSet::of(std::move(chosen), B);
    return r;
}

std::vector<double> katz_scores(const WeightedGraph& graph, double gamma,
                                double tol, int max_terms) {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in [0,1)");
    const int n = graph.node_count;
    const double beta = 1.0 - gamma;
    std::vector<double> c(n, 0.0), v(n, 1.0), next(n, 0.0);
    double prev_norm = 0.0;
    int growth_streak = 0;
    for (int term = 1; term <= max_terms; ++term) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            auto nbrs = graph.neighbors(i);
            auto ws = graph.arc_weights(i);
            double acc = 0.0;
            for (std::size_t k = 0; k < nbrs.size(); ++k) acc += ws[k] * v[nbrs[k]];
            next[i] = beta * acc;
        }
        v.swap(next);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            c[i] += v[i];
            norm = std::max(norm, std::abs(v[i]));
        }
        if (norm < tol) return c;
        if (term > 1 && norm > prev_norm) {
            if (++growth_streak >= 10)
                throw InfeasibleError("Katz series diverges (growth ratio " +
                                      std::to_string(norm / prev_norm) + ")");
        } else {
            growth_streak = 0;
        }
        prev_norm = norm;
    }
    return c;
}

namespace {

HeuristicRanking top_by_score(const std::vector<double>& scores, int B) {
    const int n = static_cast<int>(scores.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    HeuristicRanking r;
    r.scores = scores;
    std::vector<int> chosen(order.begin(), order.begin() + B);
    for (int i = 0; i + 1 < B; ++i)
        if (scores[order[i]] == scores[order[i + 1]]) ++r.tie_breaks;
    r.selected = SeedSet::of(std::move(chosen), B);
    return r;
}

}  // namespace

HeuristicRanking katz_top(const WeightedGraph& graph, const GipParams& params, int B) {
    check_budget(B, graph.node_count);
    std::vector<double> c = katz_scores(graph, params.gamma);
    for (double& x : c) x *= params.h0;  // uniform h0 keeps the order
    return top_by_score(c, B);
}

std::vector<int> core_numbers(const WeightedGraph& graph) {
    const int n = graph.node_count;
    std::vector<int> deg(n), core(n, 0);
    int max_deg = 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = graph.degree(v);
        max_deg = std::max(max_deg, deg[v]);
    }
    // bucket peel in ascending degree order
    std::vector<int> bin(max_deg + 2, 0), pos(n), vert(n);
    for (int v = 0; v < n; ++v) ++bin[deg[v]];
    int start = 0;
    for (int d = 0; d <= max_deg; ++d) {
        int count = bin[d];
        bin[d] = start;
        start += count;
    }
    for (int v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]]++;
        vert[pos[v]] = v;
    }
    for (int d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
    bin[0] = 0;

    std::vector<int> cur = deg;
    for (int i = 0; i < n; ++i) {
        int v = vert[i];
        core[v] = cur[v];
        for (int u : graph.neighbors(v)) {
            if (cur[u] > cur[v]) {
                int du = cur[u], pu = pos[u];
                int pw = bin[du], w = vert[pw];
                if (u != w) {
                    std::swap(vert[pu], vert[pw]);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                ++bin[du];
                --cur[u];
            }
        }
    }
    return core;
}

HeuristicRanking kcore_top(const WeightedGraph& graph, int B) {
    check_budget(B, graph.node_count);
    const int n = graph.node_count;
    std::vector<int> core = core_numbers(graph);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (core[a] != core[b]) return core[a] > core[b];
        int da = graph.degree(a), db = graph.degree(b);
        if (da != db) return da > db;
        return a < b;
    });
    HeuristicRanking r;
    r.scores.assign(core.begin(), core.end());
    std::vector<int> chosen(order.begin(), order.begin() + B);
    for (int i = 0; i + 1 < B; ++i)
        if (core[order[i]] == core[order[i + 1]]) ++r.tie_breaks;
    r.selected = SeedSet::of(std::move(chosen), B);
    return r;
}

namespace {

// Sum of (k_j - 1) over nodes at distance exactly `radius`, skipping removed
// nodes; degrees count live neighbors only.
double ci_score(const WeightedGraph& graph, int node, int radius,
                const std::vector<char>& removed, const std::vector<int>& live_deg,
                std::vector<int>& dist, std::vector<int>& touched) {
    if (removed[node]) return 0.0;
    double factor = live_deg[node] - 1;
    if (factor <= 0.0) return 0.0;
    std::deque<int> queue{node};
    dist[node] = 0;
    touched.push_back(node);
    double boundary = 0.0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (dist[u] == radius) {
            boundary += live_deg[u] - 1;
            continue;
        }
        for (int v : graph.neighbors(u)) {
            if (removed[v] || dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            touched.push_back(v);
            queue.push_back(v);
        }
    }
    for (int u : touched) dist[u] = -1;
    touched.clear();
    return factor * boundary;
}

}  // namespace

HeuristicRanking collective_influence(const WeightedGraph& graph, int radius, int B,
                                      CiMode mode) {
    check_budget(B, graph.node_count);
    if (radius < 1) throw ValidationError("CI radius must be >= 1");
    const int n = graph.node_count;
    std::vector<char> removed(n, 0);
    std::vector<int> live_deg(n);
    for (int v = 0; v < n; ++v) live_deg[v] = graph.degree(v);
    std::vector<int> dist(n, -1), touched;

    HeuristicRanking r;
    r.scores.assign(n, 0.0);
    if (mode == CiMode::Static) {
        for (int v = 0; v < n; ++v)
            r.scores[v] = ci_score(graph, v, radius, removed, live_deg, dist, touched);
        return top_by_score(r.scores, B);
    }

    std::vector<int> chosen;
    for (int round = 0; round < B; ++round) {
        int best = -1;
        double best_score = 0.0;
        int ties = 0;
        for (int v = 0; v < n; ++v) {
            if (removed[v]) continue;
            double s = ci_score(graph, v, radius, removed, live_deg, dist, touched);
            r.scores[v] = s;
            if (best < 0 || s > best_score) {
                best = v;
                best_score = s;
                ties = 0;
            } else if (s == best_score) {
                ++ties;
            }
        }
        if (ties > 0) ++r.tie_breaks;
        chosen.push_back(best);
        removed[best] = 1;
        for (int u : graph.neighbors(best))
            if (!removed[u]) --live_deg[u];
    }
    r.selected = SeedSet::of(std::move(chosen), B);
    return r;
}

SeedSet pseudo_random_start(const WeightedGraph& graph, int B, std::uint64_t rng_seed) {
    check_budget(B, graph.node_count);
    int pool_size = std::min(4 * B, graph.node_count);
    HeuristicRanking sd = single_discount(graph, pool_size);
    std::vector<int> pool = sd.selected.nodes;  // ascending; reorder by SD rank is
    // irrelevant for uniform sampling without replacement
    std::mt19937_64 rng(rng_seed);
    // partial Fisher-Yates, hand-rolled draw so results are stable across
    // standard libraries
    for (int i = 0; i < B; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(B);
    return SeedSet::of(std::move(pool), B);
}

}  // namespace nads
