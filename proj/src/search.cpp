#include "nads/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "nads/errors.hpp"
#include "nads/heuristics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nads {

void SearchConfig::validate() const {
    if (!(zeta0 > 0.0 && zeta0 < 1.0)) throw ValidationError("need 0 < zeta0 < 1");
    if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("need 0 < delta < 1");
    if (d_max < 2 || d_max % 2 != 0) throw ValidationError("d_max must be even and >= 2");
    if (chunk < 1) throw ValidationError("chunk must be positive");
    if (threads < 0) throw ValidationError("threads must be non-negative");
}

std::string termination_label(Termination t, int radius) {
    switch (t) {
        case Termination::LocalOptimum: return "local_optimum(" + std::to_string(radius) + ")";
        case Termination::TimeBudget: return "time_budget";
        case Termination::EvalBudget: return "eval_budget";
    }
    return "?";
}

SwapStream::SwapStream(const SeedSet& z, int k_min, int k_max, std::vector<int> add_pool)
    : base_(z), k_(k_min), k_max_(k_max), pool_(std::move(add_pool)) {}

bool SwapStream::advance_combo(std::vector<int>& idx, int pool_size) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < pool_size - (k - i)) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::optional<SeedSet> SwapStream::next() {
    const int B = static_cast<int>(base_.nodes.size());
    while (k_ <= k_max_) {
        if (k_ > B || k_ > static_cast<int>(pool_.size())) {
            ++k_;
            fresh_k_ = true;
            continue;
        }
        if (fresh_k_) {
            rm_idx_.resize(k_);
            add_idx_.resize(k_);
            for (int i = 0; i < k_; ++i) rm_idx_[i] = add_idx_[i] = i;
            fresh_k_ = false;
        } else if (!advance_combo(add_idx_, static_cast<int>(pool_.size()))) {
            if (!advance_combo(rm_idx_, B)) {
                ++k_;
                fresh_k_ = true;
                continue;
            }
            for (int i = 0; i < k_; ++i) add_idx_[i] = i;
        }
        std::vector<int> nodes;
        nodes.reserve(B);
        std::size_t ri = 0;
        for (int i = 0; i < B; ++i) {
            if (ri < rm_idx_.size() && rm_idx_[ri] == i) {
                ++ri;
            } else {
                nodes.push_back(base_.nodes[i]);
            }
        }
        for (int i = 0; i < k_; ++i) nodes.push_back(pool_[add_idx_[i]]);
        std::sort(nodes.begin(), nodes.end());
        return SeedSet{std::move(nodes), base_.budget};
    }
    return std::nullopt;
}

namespace {

std::vector<int> complement_of(const std::vector<int>& sorted_subset, int n) {
    std::vector<int> out;
    out.reserve(n - sorted_subset.size());
    std::size_t si = 0;
    for (int v = 0; v < n; ++v) {
        if (si < sorted_subset.size() && sorted_subset[si] == v) {
            ++si;
        } else {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<int> apply_ordering(std::vector<int> pool, Ordering ordering,
                                const WeightedGraph* graph) {
    if (ordering == Ordering::DegreeDescending && graph != nullptr) {
        std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
            int da = graph->degree(a), db = graph->degree(b);
            if (da != db) return da > db;
            return a < b;
        });
    }
    return pool;
}

}  // namespace

SwapStream swap_neighborhood(const SeedSet& z, int d, int node_count) {
    if (d < 2 || d % 2 != 0) throw ValidationError("neighborhood distance must be even and >= 2");
    for (int id : z.nodes)
        if (id < 0 || id >= node_count) throw ValidationError("seed id out of range");
    return SwapStream(z, 1, d / 2, complement_of(z.nodes, node_count));
}

std::vector<int> restricted_add_candidates(const WeightedGraph& graph, const SeedSet& z) {
    std::vector<char> allowed(graph.node_count, 0);
    for (int s : z.nodes) {
        if (s < 0 || s >= graph.node_count) throw ValidationError("seed id out of range");
        allowed[s] = 1;
        for (int v : graph.neighbors(s)) allowed[v] = 1;
    }
    std::vector<int> out;
    for (int v = 0; v < graph.node_count; ++v)
        if (allowed[v]) out.push_back(v);
    return out;
}

namespace {

bool sufficient_improvement(double candidate, double incumbent, double zeta) {
    // The multiplicative test is ill-posed at non-positive incumbents; any
    // strict improvement counts there.
    if (incumbent <= 0.0) return candidate > incumbent;
    return candidate > (1.0 + zeta) * incumbent;
}

struct PollContext {
    std::function<bool()> should_stop;          // checked between evaluations
    std::function<std::uint64_t()> eval_room;   // remaining eval budget for chunk clamping
    int threads = 0;
    int chunk = 64;
    std::uint64_t* candidates_evaluated = nullptr;
};

PollOutcome poll_impl(const ObjectiveFn& objective, double incumbent_score,
                      CandidateStream& candidates, double zeta, const PollContext& ctx) {
    PollOutcome best;
    bool have_best = false;
    auto note = [&](std::uint64_t k) {
        if (ctx.candidates_evaluated) *ctx.candidates_evaluated += k;
    };

    if (ctx.threads <= 1) {
        while (true) {
            if (ctx.should_stop && ctx.should_stop()) return {PollOutcome::Kind::BudgetStop, {}, kBarrier};
            auto y = candidates.next();
            if (!y) break;
            double s = objective(*y);
            note(1);
            if (sufficient_improvement(s, incumbent_score, zeta))
                return {PollOutcome::Kind::Sufficient, std::move(*y), s};
            if (s > incumbent_score && (!have_best || s > best.score)) {
                best = {PollOutcome::Kind::InsufficientBest, std::move(*y), s};
                have_best = true;
            }
        }
        return have_best ? best : PollOutcome{PollOutcome::Kind::Exhausted, {}, kBarrier};
    }

    // Chunked prefix scan: evaluate a block in parallel, then reduce it in
    // stream order so the outcome matches the sequential scan.
    std::vector<SeedSet> block;
    std::vector<double> scores;
    while (true) {
        if (ctx.should_stop && ctx.should_stop()) return {PollOutcome::Kind::BudgetStop, {}, kBarrier};
        std::uint64_t room = ctx.eval_room ? ctx.eval_room() : static_cast<std::uint64_t>(ctx.chunk);
        std::size_t want = std::min<std::uint64_t>(ctx.chunk, std::max<std::uint64_t>(room, 1));
        block.clear();
        while (block.size() < want) {
            auto y = candidates.next();
            if (!y) break;
            block.push_back(std::move(*y));
        }
        if (block.empty()) break;
        scores.assign(block.size(), kBarrier);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(ctx.threads)
#endif
        for (long long i = 0; i < static_cast<long long>(block.size()); ++i)
            scores[i] = objective(block[i]);
        note(block.size());
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (sufficient_improvement(scores[i], incumbent_score, zeta))
                return {PollOutcome::Kind::Sufficient, std::move(block[i]), scores[i]};
            if (scores[i] > incumbent_score && (!have_best || scores[i] > best.score)) {
                best = {PollOutcome::Kind::InsufficientBest, std::move(block[i]), scores[i]};
                have_best = true;
            }
        }
    }
    return have_best ? best : PollOutcome{PollOutcome::Kind::Exhausted, {}, kBarrier};
}

}  // namespace

PollOutcome poll(const ObjectiveFn& objective, const SeedSet& z,
                 CandidateStream& candidates, double zeta) {
    return poll_impl(objective, objective(z), candidates, zeta, PollContext{});
}

namespace {

class VectorStream final : public CandidateStream {
public:
    explicit VectorStream(std::vector<SeedSet> items) : items_(std::move(items)) {}
    std::optional<SeedSet> next() override {
        if (i_ < items_.size()) return items_[i_++];
        return std::nullopt;
    }

private:
    std::vector<SeedSet> items_;
    std::size_t i_ = 0;
};

class SearchDriver {
public:
    SearchDriver(const WeightedGraph& graph, const GipParams& params,
                 const SearchConfig& config, bool network_aware)
        : graph_(graph), params_(params), config_(config), network_aware_(network_aware),
          rng_(config.rng_seed) {
        config_.validate();
        params_.validate();
        params_.require_feasible(graph_.avg_edge_weight);
    }

    SearchResult run(const SeedSet& start) {
        if (!start.in_mesh(graph_.node_count))
            throw ValidationError("start point is not a mesh point for this graph");
        t0_ = Clock::now();
        z_ = start;
        zeta_ = config_.zeta0;
        score_ = eval(z_);
        record_trace();

        while (true) {
            if (auto stop = budget_hit()) return finish(*stop, 0);

            if (config_.search_step) {
                VectorStream trials(config_.search_step(graph_, z_, rng_));
                PollOutcome out = poll_here(trials);
                if (out.kind == PollOutcome::Kind::BudgetStop) return finish(stopped_, 0);
                if (out.kind == PollOutcome::Kind::Sufficient) {
                    accept(std::move(out), true);
                    ++stats_.search_accepts;
                    continue;
                }
                // a search step only short-circuits on sufficient improvement
            }

            if (!network_aware_) {
                ++stats_.polls;
                SwapStream stream(z_, 1, 1, ordered_pool(complement_of(z_.nodes, graph_.node_count)));
                PollOutcome out = poll_here(stream);
                if (out.kind == PollOutcome::Kind::Exhausted) return finish_local(2);
                if (out.kind == PollOutcome::Kind::BudgetStop) return finish(stopped_, 0);
                bool suff = out.kind == PollOutcome::Kind::Sufficient;
                accept(std::move(out), suff);
                ++stats_.phase1_accepts;
                continue;
            }

            // Phase 1: one-swaps whose added node is active in z or adjacent
            // to an active node.
            std::vector<int> allowed = restricted_add_candidates(graph_, z_);
            std::vector<int> pool1;
            pool1.reserve(allowed.size());
            std::set_difference(allowed.begin(), allowed.end(), z_.nodes.begin(), z_.nodes.end(),
                                std::back_inserter(pool1));
            const std::uint64_t B = z_.nodes.size();
            const std::uint64_t non_seeds = graph_.node_count - B;
            stats_.filtered_by_restriction += B * (non_seeds - pool1.size());
            ++stats_.polls;
            SwapStream phase1(z_, 1, 1, ordered_pool(std::move(pool1)));
            PollOutcome out = poll_here(phase1);
            if (out.kind == PollOutcome::Kind::BudgetStop) return finish(stopped_, 0);
            if (out.kind != PollOutcome::Kind::Exhausted) {
                bool suff = out.kind == PollOutcome::Kind::Sufficient;
                accept(std::move(out), suff);
                ++stats_.phase1_accepts;
                continue;
            }

            // Phase 2: the remainder of N(z,2).
            std::vector<int> pool2 = complement_of(allowed, graph_.node_count);
            ++stats_.polls;
            SwapStream phase2(z_, 1, 1, ordered_pool(std::move(pool2)));
            out = poll_here(phase2);
            if (out.kind == PollOutcome::Kind::BudgetStop) return finish(stopped_, 0);
            if (out.kind != PollOutcome::Kind::Exhausted) {
                bool suff = out.kind == PollOutcome::Kind::Sufficient;
                accept(std::move(out), suff);
                ++stats_.phase2_accepts;
                continue;
            }

            // Phase 3: widen d one shell at a time up to d_max.
            int d = 2;
            bool moved = false;
            while (config_.phase3_enabled && d < config_.d_max) {
                d += 2;
                ++stats_.polls;
                SwapStream shell(z_, d / 2, d / 2,
                                 ordered_pool(complement_of(z_.nodes, graph_.node_count)));
                out = poll_here(shell);
                if (out.kind == PollOutcome::Kind::BudgetStop) return finish(stopped_, 0);
                if (out.kind != PollOutcome::Kind::Exhausted) {
                    bool suff = out.kind == PollOutcome::Kind::Sufficient;
                    accept(std::move(out), suff);
                    ++stats_.phase3_accepts;
                    moved = true;
                    break;
                }
            }
            if (!moved) return finish_local(d);
        }
    }

    EvalCache& cache() { return cache_; }

private:
    using Clock = std::chrono::steady_clock;

    double elapsed_s() const {
        return std::chrono::duration<double>(Clock::now() - t0_).count();
    }

    double eval(const SeedSet& s) { return objective(graph_, params_, s, cache_); }

    std::optional<Termination> budget_hit() {
        if (config_.eval_budget && cache_.eval_count() >= *config_.eval_budget)
            return Termination::EvalBudget;
        if (config_.time_budget_s && elapsed_s() >= *config_.time_budget_s)
            return Termination::TimeBudget;
        return std::nullopt;
    }

    std::vector<int> ordered_pool(std::vector<int> pool) {
        return apply_ordering(std::move(pool), config_.ordering, &graph_);
    }

    PollOutcome poll_here(CandidateStream& stream) {
        PollContext ctx;
        ctx.should_stop = [this] {
            if (auto stop = budget_hit()) {
                stopped_ = *stop;
                return true;
            }
            return false;
        };
        if (config_.eval_budget) {
            ctx.eval_room = [this] {
                std::uint64_t used = cache_.eval_count();
                return used >= *config_.eval_budget ? 0 : *config_.eval_budget - used;
            };
        }
        ctx.threads = config_.threads;
        ctx.chunk = config_.chunk;
        ctx.candidates_evaluated = &stats_.candidates_evaluated;
        auto f = [this](const SeedSet& s) { return eval(s); };
        return poll_impl(f, score_, stream, zeta_, ctx);
    }

    void accept(PollOutcome out, bool was_sufficient) {
        z_ = std::move(out.point);
        score_ = out.score;
        if (!was_sufficient) zeta_ *= config_.delta;
        record_trace();
    }

    void record_trace() { trace_.push_back({elapsed_s(), cache_.eval_count(), score_}); }

    SearchResult finish_local(int radius) { return finish(Termination::LocalOptimum, radius); }

    SearchResult finish(Termination t, int radius) {
        SearchResult r;
        r.seeds = z_;
        r.score = score_;
        r.trace = std::move(trace_);
        r.termination = t;
        r.local_radius = radius;
        r.stats = stats_;
        r.evals = cache_.eval_count();
        r.elapsed_s = elapsed_s();
        return r;
    }

    const WeightedGraph& graph_;
    GipParams params_;
    SearchConfig config_;
    bool network_aware_;
    std::mt19937_64 rng_;
    EvalCache cache_;
    Clock::time_point t0_;
    SeedSet z_;
    double score_ = 0.0;
    double zeta_ = 0.0;
    std::vector<TracePoint> trace_;
    SearchStats stats_;
    Termination stopped_ = Termination::LocalOptimum;
};

}  // namespace

SearchResult run_cds(const WeightedGraph& graph, const GipParams& params,
                     const SearchConfig& config, const SeedSet& start) {
    return SearchDriver(graph, params, config, false).run(start);
}

SearchResult run_cds(const WeightedGraph& graph, const GipParams& params,
                     const SearchConfig& config, int B) {
    return run_cds(graph, params, config, katz_top(graph, params, B).selected);
}

SearchResult run_nads(const WeightedGraph& graph, const GipParams& params,
                      const SearchConfig& config, const SeedSet& start) {
    return SearchDriver(graph, params, config, true).run(start);
}

bool is_local_maximum(const ObjectiveFn& objective, const SeedSet& z, int d,
                      int node_count) {
    if (d < 2 || d % 2 != 0) throw ValidationError("d must be even and >= 2");
    double sz = objective(z);
    SwapStream stream = swap_neighborhood(z, d, node_count);
    bool ok = true;
    while (auto y = stream.next()) {
        if (objective(*y) > sz) ok = false;
    }
    return ok;
}

}  // namespace nads
