#include "nads/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "nads/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nads {

double dense_propagate(const WeightedGraph& graph, const GipParams& params,
                       const SeedSet& seeds) {
    params.validate();
    params.require_feasible(graph.avg_edge_weight);
    const int n = graph.node_count;
    if (n > 10000) throw SizeError("dense_propagate guard: n > 10000");
    for (int id : seeds.nodes)
        if (id < 0 || id >= n) throw ValidationError("seed id out of range");

    const double alpha = graph.avg_edge_weight;
    std::vector<double> x(n, 0.0), y(n, 0.0);
    for (int s : seeds.nodes) x[s] = params.h0;
    double score = params.include_t0 ? static_cast<double>(seeds.nodes.size()) * params.h0 : 0.0;

    double disc = 1.0;
    int t = 0;
    while (true) {
        double mx = 0.0;
        for (int i = 0; i < n; ++i) mx = std::max(mx, x[i]);
        if (!(disc * mx > params.epsilon)) break;
        if (t == params.max_steps) break;

        double lower = std::pow(params.theta_l * alpha, t + 1) * params.l0;
        double upper = params.theta_h * std::pow(params.theta_l, t) * std::pow(alpha, t + 1) * params.h0;
        if (upper < lower) upper = lower;

        std::fill(y.begin(), y.end(), 0.0);
        for (int u = 0; u < n; ++u) {
            auto nbrs = graph.neighbors(u);
            auto ws = graph.arc_weights(u);
            for (std::size_t k = 0; k < nbrs.size(); ++k) y[nbrs[k]] += ws[k] * x[u];
        }

        disc *= (1.0 - params.gamma);
        for (int v = 0; v < n; ++v) {
            double xv = y[v] < lower ? 0.0 : (y[v] >= upper ? upper : y[v]);
            x[v] = xv;
            if (xv > 0.0) score += disc * xv;
        }
        ++t;
    }
    return score;
}

namespace {

double binomial_guarded(int n, int b, double guard) {
    double c = 1.0;
    for (int i = 1; i <= b; ++i) {
        c *= static_cast<double>(n - b + i) / static_cast<double>(i);
        if (c > guard) return c;
    }
    return c;
}

// Lexicographically next B-combination over 0..n-1; false once exhausted.
bool next_combination(std::vector<int>& c, int n) {
    int b = static_cast<int>(c.size());
    for (int i = b - 1; i >= 0; --i) {
        if (c[i] < n - (b - i)) {
            ++c[i];
            for (int j = i + 1; j < b; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

OracleReport brute_force_optimum(const WeightedGraph& graph, const GipParams& params,
                                 int B, int threads) {
    const int n = graph.node_count;
    if (B < 0 || B > n) throw ValidationError("budget out of range");
    if (binomial_guarded(n, B, 1e6) > 1e6) throw SizeError("brute force guard: C(n,B) > 1e6");

    OracleReport report;
    if (B == 0) {
        report.optimum = SeedSet::of({}, 0);
        report.optimum_score = dense_propagate(graph, params, report.optimum);
        report.evaluated = 1;
        return report;
    }

    std::vector<int> combo(B);
    for (int i = 0; i < B; ++i) combo[i] = i;
    bool more = true;
    bool have_best = false;
    std::vector<int> best;
    double best_score = 0.0;

    const int block_size = 256;
    std::vector<std::vector<int>> block;
    std::vector<double> block_scores;
    while (more) {
        block.clear();
        while (more && static_cast<int>(block.size()) < block_size) {
            block.push_back(combo);
            more = next_combination(combo, n);
        }
        block_scores.assign(block.size(), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(threads, 1)) if (threads > 0)
#endif
        for (long long i = 0; i < static_cast<long long>(block.size()); ++i) {
            block_scores[i] = dense_propagate(graph, params, SeedSet{block[i], B});
        }
        // in-order reduction keeps the lexicographically first maximizer
        for (std::size_t i = 0; i < block.size(); ++i) {
            ++report.evaluated;
            if (!have_best || block_scores[i] > best_score) {
                have_best = true;
                best = block[i];
                best_score = block_scores[i];
            }
        }
    }
    report.optimum = SeedSet{std::move(best), B};
    report.optimum_score = best_score;
    return report;
}

OracleReport verify_local_maximum(const WeightedGraph& graph, const GipParams& params,
                                  const SeedSet& z, int d) {
    if (d < 2 || d % 2 != 0) throw ValidationError("d must be even and >= 2");
    if (!z.in_mesh(graph.node_count)) throw ValidationError("z is not a mesh point");
    const int n = graph.node_count;
    const int B = z.budget;

    // |N(z,d)| = sum over k of C(B,k)*C(n-B,k)
    double total = 0.0;
    for (int k = 1; k <= std::min(d / 2, B); ++k)
        total += binomial_guarded(B, k, 1e6) * binomial_guarded(n - B, k, 1e6);
    if (total > 1e6) throw SizeError("verify guard: |N(z,d)| > 1e6");

    OracleReport report;
    report.optimum = z;
    report.optimum_score = dense_propagate(graph, params, z);

    std::vector<int> non_seeds;
    non_seeds.reserve(n - B);
    {
        std::size_t si = 0;
        for (int v = 0; v < n; ++v) {
            if (si < z.nodes.size() && z.nodes[si] == v) {
                ++si;
            } else {
                non_seeds.push_back(v);
            }
        }
    }

    for (int k = 1; k <= std::min(d / 2, B); ++k) {
        if (static_cast<int>(non_seeds.size()) < k) break;
        std::vector<int> rm(k), add(k);
        for (int i = 0; i < k; ++i) rm[i] = i;
        bool more_rm = true;
        while (more_rm) {
            for (int i = 0; i < k; ++i) add[i] = i;
            bool more_add = true;
            while (more_add) {
                std::vector<int> cand;
                cand.reserve(B);
                std::size_t ri = 0;
                for (int i = 0; i < B; ++i) {
                    if (ri < rm.size() && rm[ri] == i) {
                        ++ri;
                    } else {
                        cand.push_back(z.nodes[i]);
                    }
                }
                for (int i = 0; i < k; ++i) cand.push_back(non_seeds[add[i]]);
                std::sort(cand.begin(), cand.end());
                SeedSet y{std::move(cand), B};
                double s = dense_propagate(graph, params, y);
                ++report.evaluated;
                if (s > report.optimum_score) report.witnesses.emplace_back(std::move(y), s);
                more_add = next_combination(add, static_cast<int>(non_seeds.size()));
            }
            more_rm = next_combination(rm, B);
        }
    }
    return report;
}

}  // namespace nads
