#pragma once

#include <cstdint>
#include <vector>

#include "nads/gip.hpp"
#include "nads/graph.hpp"

namespace nads {

struct HeuristicRanking {
    std::vector<double> scores;  // per-node score the ranking was based on
    SeedSet selected;
    int tie_breaks = 0;  // argmax ties resolved (lower id wins)
};

/// Degree-based selection with a -1 discount on neighbors of chosen seeds.
HeuristicRanking single_discount(const WeightedGraph& graph, int B);

/// Exact greedy: every round evaluates the full objective for each candidate
/// and takes the max marginal gain. No lazy shortcut (the objective is not
/// submodular here). threads > 0 evaluates rounds' candidates in parallel
/// with a deterministic argmax reduction.
HeuristicRanking simple_greedy(const WeightedGraph& graph, const GipParams& params,
                               int B, EvalCache& cache, int threads = 0);

/// Katz centrality c = {[I - (1-gamma)W]^{-1} - I} 1 via the Neumann series,
/// summed until the increment's infinity norm drops below tol. Throws
/// InfeasibleError when the series diverges.
std::vector<double> katz_scores(const WeightedGraph& graph, double gamma,
                                double tol = 1e-10, int max_terms = 10000);

HeuristicRanking katz_top(const WeightedGraph& graph, const GipParams& params, int B);

/// Core numbers by iterative pruning; rank by core, then degree, then id.
HeuristicRanking kcore_top(const WeightedGraph& graph, int B);

std::vector<int> core_numbers(const WeightedGraph& graph);

enum class CiMode { Static, Adaptive };

/// Collective influence CI(i) = (k_i - 1) * sum of (k_j - 1) over nodes at
/// shortest-path distance exactly `radius`. Adaptive mode re-ranks after
/// virtually removing each pick.
HeuristicRanking collective_influence(const WeightedGraph& graph, int radius, int B,
                                      CiMode mode = CiMode::Static);

/// B nodes sampled without replacement from the Single Discount top-4B pool
/// (the full ranking when 4B > n). Deterministic for a fixed seed.
SeedSet pseudo_random_start(const WeightedGraph& graph, int B, std::uint64_t rng_seed);

}  // namespace nads
