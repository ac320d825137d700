#pragma once

#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nads/graph.hpp"

namespace nads {

/// Propagation parameters. theta_l/theta_h shape the time-dependent
/// activation bounds; gamma discounts step-t influence by (1-gamma)^t.
struct GipParams {
    double theta_l = 2.0;
    double theta_h = 50.0;
    double gamma = 0.1;
    double epsilon = 1e-6;
    double l0 = 1.0;
    double h0 = 1.0;
    bool include_t0 = false;  // add the B*h0 seed term to the score
    int max_steps = 10000;

    void validate() const;
    bool feasible_for(double alpha) const { return theta_l * alpha < 1.0; }
    void require_feasible(double alpha) const;
};

/// A point of the mesh: exactly `budget` nodes, strictly ascending.
struct SeedSet {
    std::vector<int> nodes;
    int budget = 0;

    // Sorts ids ascending; rejects duplicates and negatives. A size/budget
    // mismatch is allowed here and handled by the objective's barrier.
    static SeedSet of(std::vector<int> ids, int budget);
    bool in_mesh(int node_count) const;
    bool operator==(const SeedSet&) const = default;
};

struct Bounds {
    double lower = 0.0;
    double upper = 0.0;
    bool clamped = false;  // upper was raised to lower
};

/// Activation bounds at step t >= 1:
///   l_t = (theta_l * alpha)^t * l0
///   h_t = theta_h * theta_l^(t-1) * alpha^t * h0
/// Throws InfeasibleError when theta_l * alpha >= 1.
Bounds bounds_at(const GipParams& params, double alpha, int t);

/// Piecewise activation: 0 below `lower`, identity in [lower, upper), capped
/// at `upper` above.
double activation(double y, double lower, double upper);

struct PropagationResult {
    double score = 0.0;
    int steps = 0;                    // last t with a nonzero state
    std::vector<int> active_per_step; // |A_t| for t = 0..steps
    std::optional<std::vector<double>> node_influence;
    std::uint64_t state_updates = 0;  // activation evaluations
    bool truncated = false;           // max_steps reached before convergence
};

/// Frontier propagation. Only out-neighbors of the active set are evaluated
/// each step; stops when the discounted state's infinity norm drops to
/// epsilon. Deterministic; sources are scattered in ascending node order so
/// results are bit-identical to the dense reference.
PropagationResult propagate(const WeightedGraph& graph, const GipParams& params,
                            const SeedSet& seeds, bool with_node_influence = false);

constexpr double kBarrier = -std::numeric_limits<double>::infinity();

/// Memoized objective evaluations, keyed by the ascending node array.
/// Lookups and inserts are serialized; propagation runs outside the lock.
class EvalCache {
public:
    std::optional<double> find(const std::vector<int>& key);
    void insert(const std::vector<int>& key, double score);
    std::uint64_t eval_count() const;
    std::uint64_t cache_hits() const;
    std::size_t size() const;

private:
    struct VecHash {
        std::size_t operator()(const std::vector<int>& v) const;
    };
    std::unordered_map<std::vector<int>, double, VecHash> memo_;
    std::uint64_t evals_ = 0;
    std::uint64_t hits_ = 0;
    mutable std::mutex mu_;
};

/// Barrier objective s_Omega(z): the propagation score when `seeds` is a
/// mesh point, -inf otherwise. Memoizes through `cache`.
double objective(const WeightedGraph& graph, const GipParams& params,
                 const SeedSet& seeds, EvalCache& cache);

}  // namespace nads
