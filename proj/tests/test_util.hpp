#pragma once

// Shared fixtures and independent reference helpers for the test suites.

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nads/gip.hpp"
#include "nads/graph.hpp"
#include "nads/search.hpp"

namespace nads::testing {

// Fixture parameters used throughout: theta 2/50, no discounting, unit
// initial bounds.
// Shell helper for test scratch dirs; the return value is deliberately eaten.
inline void shell(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    (void)rc;
}

inline GipParams fixture_params() {
    GipParams p;
    p.theta_l = 2.0;
    p.theta_h = 50.0;
    p.gamma = 0.0;
    p.l0 = 1.0;
    p.h0 = 1.0;
    p.epsilon = 1e-6;
    return p;
}

inline WeightedGraph star4() {
    return generate_synthetic(SyntheticKind::Star, {3, 0}, 0);
}

inline WeightedGraph barbell9() {
    return generate_synthetic(SyntheticKind::Barbell, {3, 3}, 0);
}

inline WeightedGraph path5() {
    return generate_synthetic(SyntheticKind::Path, {5, 0}, 0);
}

// Two disjoint 3-stars; the only improving move from {center, center} is a
// 2-swap, so phase 3 is required to escape.
inline WeightedGraph twin_stars() {
    return build_graph(6, {{0, 1}, {0, 2}, {3, 4}, {3, 5}}, WeightScheme::uniform(0.1));
}

// Triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
inline WeightedGraph two_triangles() {
    return build_graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}},
                       WeightScheme::uniform(0.1));
}

inline ObjectiveFn make_objective(const WeightedGraph& g, const GipParams& p, EvalCache& cache) {
    return [&g, &p, &cache](const SeedSet& s) { return objective(g, p, s, cache); };
}

inline std::vector<SeedSet> collect(CandidateStream& stream) {
    std::vector<SeedSet> out;
    while (auto y = stream.next()) out.push_back(std::move(*y));
    return out;
}

// Random small graph drawn from the synthetic families.
inline WeightedGraph random_graph(std::mt19937_64& rng, int max_n, const WeightScheme& scheme) {
    int kind = static_cast<int>(rng() % 5);
    int n = 4 + static_cast<int>(rng() % std::max(1, max_n - 3));
    switch (kind) {
        case 0: return generate_synthetic(SyntheticKind::Path, {n, 0}, 0, scheme);
        case 1: return generate_synthetic(SyntheticKind::Star, {n - 1, 0}, 0, scheme);
        case 2: return generate_synthetic(SyntheticKind::Clique, {std::min(n, 10), 0}, 0, scheme);
        case 3: {
            int clique = 2 + static_cast<int>(rng() % 3);
            int mid = 1 + static_cast<int>(rng() % 4);
            return generate_synthetic(SyntheticKind::Barbell, {clique, mid}, 0, scheme);
        }
        default: {
            int m = 1 + static_cast<int>(rng() % 3);
            n = std::max(n, m + 2);
            return generate_synthetic(SyntheticKind::RandomAttachment, {n, m}, rng(), scheme);
        }
    }
}

inline SeedSet random_subset(std::mt19937_64& rng, int n, int k) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng() % (n - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    return SeedSet::of(std::move(ids), k);
}

// Planted-community graph with shuffled labels: dense intra-community blocks
// plus sparse random inter-community edges. Stands in for clustered social
// graphs at Facebook scale.
inline WeightedGraph community_graph(int n, int community, double p_intra,
                                     int inter_per_node, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> label(n);
    for (int i = 0; i < n; ++i) label[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(label[i], label[static_cast<int>(rng() % (i + 1))]);
    auto unit = [&rng] { return (rng() % 1000000) / 1e6; };
    std::vector<std::pair<int, int>> edges;
    for (int base = 0; base < n; base += community) {
        int hi = std::min(n, base + community);
        for (int i = base; i < hi; ++i)
            for (int j = i + 1; j < hi; ++j)
                if (unit() < p_intra) edges.emplace_back(label[i], label[j]);
    }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < inter_per_node; ++k) {
            int j = static_cast<int>(rng() % n);
            if (j != i) edges.emplace_back(label[i], label[j]);
        }
    return build_graph(n, edges, WeightScheme::uniform(0.1));
}

// Dense Katz reference: solves [I - (1-gamma) W] c' = 1 by Gaussian
// elimination with partial pivoting and returns c = c' - 1.
inline std::vector<double> katz_dense_solve(const WeightedGraph& g, double gamma) {
    const int n = g.node_count;
    const double beta = 1.0 - gamma;
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        a[i][i] = 1.0;
        auto nbrs = g.neighbors(i);
        auto ws = g.arc_weights(i);
        for (std::size_t k = 0; k < nbrs.size(); ++k) a[i][nbrs[k]] -= beta * ws[k];
        a[i][n] = 1.0;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0.0) continue;
            double f = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = a[i][n] / a[i][i] - 1.0;
    return c;
}

}  // namespace nads::testing
