#include "nads/gip.hpp"

#include <algorithm>
#include <cmath>

#include "nads/errors.hpp"

namespace nads {

void GipParams::validate() const {
    if (!(theta_l > 0.0) || !(theta_h > 0.0)) throw ValidationError("theta_l and theta_h must be positive");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in [0,1)");
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
    if (!(l0 > 0.0) || !(h0 >= l0)) throw ValidationError("need 0 < l0 <= h0");
    if (max_steps < 1) throw ValidationError("max_steps must be positive");
}

void GipParams::require_feasible(double alpha) const {
    if (!feasible_for(alpha))
        throw InfeasibleError("propagation diverges: theta_l * alpha = " +
                              std::to_string(theta_l * alpha) + " >= 1");
}

SeedSet SeedSet::of(std::vector<int> ids, int budget) {
    if (budget < 0) throw ValidationError("budget must be non-negative");
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] < 0) throw ValidationError("negative node id in seed set");
        if (i > 0 && ids[i] == ids[i - 1]) throw ValidationError("duplicate node id in seed set");
    }
    return SeedSet{std::move(ids), budget};
}

bool SeedSet::in_mesh(int node_count) const {
    if (static_cast<int>(nodes.size()) != budget) return false;
    int prev = -1;
    for (int id : nodes) {
        if (id <= prev || id >= node_count) return false;
        prev = id;
    }
    return true;
}

Bounds bounds_at(const GipParams& params, double alpha, int t) {
    if (t < 1) throw ValidationError("bounds are defined for t >= 1");
    params.require_feasible(alpha);
    Bounds b;
    b.lower = std::pow(params.theta_l * alpha, t) * params.l0;
    b.upper = params.theta_h * std::pow(params.theta_l, t - 1) * std::pow(alpha, t) * params.h0;
    if (b.upper < b.lower) {
        b.upper = b.lower;
        b.clamped = true;
    }
    return b;
}

double activation(double y, double lower, double upper) {
    if (y < lower) return 0.0;
    if (y >= upper) return upper;
    return y;
}

PropagationResult propagate(const WeightedGraph& graph, const GipParams& params,
                            const SeedSet& seeds, bool with_node_influence) {
    params.validate();
    params.require_feasible(graph.avg_edge_weight);
    for (int id : seeds.nodes)
        if (id < 0 || id >= graph.node_count) throw ValidationError("seed id out of range");

    const int n = graph.node_count;
    PropagationResult res;
    std::vector<double> x(n, 0.0), y(n, 0.0);
    std::vector<char> marked(n, 0);
    std::vector<int> frontier = seeds.nodes;  // ascending by construction
    for (int s : frontier) x[s] = params.h0;
    res.score = params.include_t0 ? static_cast<double>(frontier.size()) * params.h0 : 0.0;
    if (with_node_influence) {
        res.node_influence.emplace(n, 0.0);
        if (params.include_t0)
            for (int s : frontier) (*res.node_influence)[s] = params.h0;
    }
    res.active_per_step.push_back(static_cast<int>(frontier.size()));

    double disc = 1.0;  // (1-gamma)^t
    int t = 0;
    std::vector<int> touched, next_frontier;
    while (true) {
        double mx = 0.0;
        for (int i : frontier) mx = std::max(mx, x[i]);
        if (!(disc * mx > params.epsilon)) break;
        if (t == params.max_steps) {
            res.truncated = true;
            break;
        }
        Bounds b = bounds_at(params, graph.avg_edge_weight, t + 1);

        // Scatter in ascending source order; each target accumulates its
        // input sum in the same order as the dense reference.
        touched.clear();
        for (int i : frontier) {
            auto nbrs = graph.neighbors(i);
            auto ws = graph.arc_weights(i);
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                int j = nbrs[k];
                y[j] += ws[k] * x[i];
                if (!marked[j]) {
                    marked[j] = 1;
                    touched.push_back(j);
                }
            }
        }
        std::sort(touched.begin(), touched.end());

        disc *= (1.0 - params.gamma);
        for (int i : frontier) x[i] = 0.0;
        next_frontier.clear();
        for (int j : touched) {
            ++res.state_updates;
            double xj = activation(y[j], b.lower, b.upper);
            y[j] = 0.0;
            marked[j] = 0;
            if (xj > 0.0) {
                x[j] = xj;
                next_frontier.push_back(j);
                res.score += disc * xj;
                if (with_node_influence) (*res.node_influence)[j] += disc * xj;
            }
        }
        ++t;
        frontier.swap(next_frontier);
        if (!frontier.empty()) {
            res.steps = t;
            res.active_per_step.push_back(static_cast<int>(frontier.size()));
        }
    }
    return res;
}

std::size_t EvalCache::VecHash::operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;  // FNV-1a
    for (int id : v) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(id));
        h *= 1099511628211ull;
    }
    return h;
}

std::optional<double> EvalCache::find(const std::vector<int>& key) {
    std::lock_guard lock(mu_);
    auto it = memo_.find(key);
    if (it == memo_.end()) return std::nullopt;
    ++hits_;
    return it->second;
}

void EvalCache::insert(const std::vector<int>& key, double score) {
    std::lock_guard lock(mu_);
    if (memo_.emplace(key, score).second) ++evals_;
}

std::uint64_t EvalCache::eval_count() const {
    std::lock_guard lock(mu_);
    return evals_;
}

std::uint64_t EvalCache::cache_hits() const {
    std::lock_guard lock(mu_);
    return hits_;
}

std::size_t EvalCache::size() const {
    std::lock_guard lock(mu_);
    return memo_.size();
}

double objective(const WeightedGraph& graph, const GipParams& params,
                 const SeedSet& seeds, EvalCache& cache) {
    if (!seeds.in_mesh(graph.node_count)) return kBarrier;
    if (auto hit = cache.find(seeds.nodes)) return *hit;
    double s = propagate(graph, params, seeds).score;
    cache.insert(seeds.nodes, s);
    return s;
}

}  // namespace nads
