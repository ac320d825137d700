#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nads/gip.hpp"
#include "nads/graph.hpp"

namespace nads {

// Reference implementations used to certify the main engine. They share no
// propagation code with the frontier engine.

struct OracleReport {
    SeedSet optimum;
    double optimum_score = 0.0;
    std::uint64_t evaluated = 0;
    std::vector<std::pair<SeedSet, double>> witnesses;  // strictly better neighbors
};

/// Full-vector GIP iteration over all nodes each step, no frontier tracking.
/// Guarded at n <= 10000.
double dense_propagate(const WeightedGraph& graph, const GipParams& params,
                       const SeedSet& seeds);

/// Enumerates the whole mesh in lexicographic order and returns the first
/// maximizer. Guarded at C(n,B) <= 1e6. threads > 0 evaluates blocks in
/// parallel with a deterministic reduction.
OracleReport brute_force_optimum(const WeightedGraph& graph, const GipParams& params,
                                 int B, int threads = 0);

/// Exhaustively checks the d-local-maximum condition; `witnesses` lists every
/// strictly better neighbor (empty iff z is a d-local maximum). Guarded at
/// |N(z,d)| <= 1e6.
OracleReport verify_local_maximum(const WeightedGraph& graph, const GipParams& params,
                                  const SeedSet& z, int d);

}  // namespace nads
