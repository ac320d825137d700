#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nads/gip.hpp"
#include "nads/graph.hpp"

namespace nads {

enum class Ordering { Lexicographic, DegreeDescending };

/// Optional SEARCH-step hook: returns trial mesh points to scan before the
/// poll. Both algorithms treat the step as optional, so it ships disabled.
using SearchStepFn = std::function<std::vector<SeedSet>(
    const WeightedGraph&, const SeedSet& incumbent, std::mt19937_64& rng)>;

struct SearchConfig {
    double zeta0 = 0.01;  // initial sufficient-improvement margin
    double delta = 0.5;   // zeta decay on insufficient polls
    int d_max = 2;        // poll radius cap, even
    bool phase3_enabled = false;
    std::optional<double> time_budget_s;
    std::optional<std::uint64_t> eval_budget;
    Ordering ordering = Ordering::Lexicographic;
    SearchStepFn search_step;  // default absent
    std::uint64_t rng_seed = 0;
    int threads = 0;  // 0 = serial candidate evaluation
    int chunk = 64;   // parallel prefix-scan chunk size

    void validate() const;
};

enum class Termination { LocalOptimum, TimeBudget, EvalBudget };

std::string termination_label(Termination t, int radius);

struct TracePoint {
    double elapsed_s = 0.0;
    std::uint64_t evals = 0;
    double score = 0.0;
};

struct SearchStats {
    std::uint64_t polls = 0;
    std::uint64_t phase1_accepts = 0;
    std::uint64_t phase2_accepts = 0;
    std::uint64_t phase3_accepts = 0;
    std::uint64_t search_accepts = 0;
    std::uint64_t candidates_evaluated = 0;
    std::uint64_t filtered_by_restriction = 0;  // N(z,2) points excluded from phase 1
};

struct SearchResult {
    SeedSet seeds;
    double score = 0.0;
    std::vector<TracePoint> trace;  // incumbent improvements, strictly increasing scores
    Termination termination = Termination::LocalOptimum;
    int local_radius = 0;  // certified d when termination == LocalOptimum
    SearchStats stats;
    std::uint64_t evals = 0;
    double elapsed_s = 0.0;
};

/// Pull-based candidate enumerator.
class CandidateStream {
public:
    virtual ~CandidateStream() = default;
    virtual std::optional<SeedSet> next() = 0;
};

/// Enumerates k-swaps of z (remove k seeds, add k nodes from `add_pool`) for
/// k = k_min..k_max, ascending k, then lexicographic over (removed tuple,
/// added tuple) in pool order.
class SwapStream final : public CandidateStream {
public:
    SwapStream(const SeedSet& z, int k_min, int k_max, std::vector<int> add_pool);
    std::optional<SeedSet> next() override;

private:
    bool advance_combo(std::vector<int>& idx, int pool_size);
    SeedSet base_;
    int k_ = 0, k_max_ = 0;
    std::vector<int> pool_;
    std::vector<int> rm_idx_, add_idx_;
    bool fresh_k_ = true;
};

/// The full neighborhood N(z,d) minus z itself: all k-swaps, k = 1..d/2.
/// d must be even and >= 2.
SwapStream swap_neighborhood(const SeedSet& z, int d, int node_count);

/// Nodes usable as swap-ins under the network restriction C(z): every node
/// active in z or adjacent to a node active in z. Sorted ascending.
std::vector<int> restricted_add_candidates(const WeightedGraph& graph, const SeedSet& z);

struct PollOutcome {
    enum class Kind { Sufficient, InsufficientBest, Exhausted, BudgetStop };
    Kind kind = Kind::Exhausted;
    SeedSet point;
    double score = kBarrier;
};

using ObjectiveFn = std::function<double(const SeedSet&)>;

/// Scans candidates in order. Returns Sufficient at the first y with
/// s(y) > (1+zeta)*s(z) (plain s(y) > s(z) when s(z) <= 0); otherwise the
/// best strictly improving candidate seen, or Exhausted. Ties never improve.
PollOutcome poll(const ObjectiveFn& objective, const SeedSet& z,
                 CandidateStream& candidates, double zeta);

/// Customized direct search: polls the full N(z,2) each iteration.
/// The overload without a start point begins from the Katz top-B set.
SearchResult run_cds(const WeightedGraph& graph, const GipParams& params,
                     const SearchConfig& config, const SeedSet& start);
SearchResult run_cds(const WeightedGraph& graph, const GipParams& params,
                     const SearchConfig& config, int B);

/// Network-aware direct search: phase 1 polls N(z,2) restricted to C(z),
/// phase 2 the remainder of N(z,2), phase 3 (optional) grows d by 2 up to
/// d_max one shell at a time. d resets to 2 after every accepted move.
SearchResult run_nads(const WeightedGraph& graph, const GipParams& params,
                      const SearchConfig& config, const SeedSet& start);

/// True iff s(z) >= s(y) for every y in N(z,d). Evaluates the entire
/// neighborhood.
bool is_local_maximum(const ObjectiveFn& objective, const SeedSet& z, int d,
                      int node_count);

}  // namespace nads
