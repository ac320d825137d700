#include "nads/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>

#include "nads/errors.hpp"

namespace nads {

WeightScheme WeightScheme::uniform(double w) {
    if (!(w > 0.0)) throw ValidationError("uniform weight must be positive");
    return {Kind::Uniform, w};
}

std::optional<int> WeightedGraph::internal_id(long long external) const {
    auto it = std::lower_bound(external_ids.begin(), external_ids.end(), external);
    if (it == external_ids.end() || *it != external) return std::nullopt;
    return static_cast<int>(it - external_ids.begin());
}

bool WeightedGraph::is_connected() const {
    if (node_count == 0) return false;
    std::vector<char> seen(node_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == node_count;
}

WeightedGraph build_graph(int node_count, const std::vector<std::pair<int, int>>& edges,
                          const WeightScheme& scheme, const std::vector<double>& file_weights) {
    if (node_count <= 0) throw ValidationError("empty graph");
    if (scheme.kind == WeightScheme::Kind::FromFile && file_weights.size() != edges.size())
        throw ValidationError("from_file scheme needs one weight per edge");

    // Dedup and drop self-loops; first occurrence wins for file weights.
    std::map<std::pair<int, int>, double> uniq;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        if (u == v) continue;
        if (u < 0 || v < 0 || u >= node_count || v >= node_count)
            throw ValidationError("edge endpoint out of range");
        if (u > v) std::swap(u, v);
        double w = scheme.kind == WeightScheme::Kind::FromFile ? file_weights[e] : 0.0;
        if (w < 0.0) throw ValidationError("negative edge weight");
        uniq.emplace(std::pair{u, v}, w);
    }
    if (uniq.empty()) throw ValidationError("empty graph: no edges");

    WeightedGraph g;
    g.node_count = node_count;
    g.edge_count = static_cast<std::int64_t>(uniq.size());
    g.external_ids.resize(node_count);
    for (int i = 0; i < node_count; ++i) g.external_ids[i] = i;

    std::vector<int> deg(node_count, 0);
    for (const auto& [uv, w] : uniq) {
        ++deg[uv.first];
        ++deg[uv.second];
    }
    g.csr_offsets.assign(node_count + 1, 0);
    for (int i = 0; i < node_count; ++i) g.csr_offsets[i + 1] = g.csr_offsets[i] + deg[i];
    g.csr_targets.resize(2 * g.edge_count);
    g.csr_weights.resize(2 * g.edge_count);

    std::vector<std::int64_t> cursor(g.csr_offsets.begin(), g.csr_offsets.end() - 1);
    auto arc_weight = [&](int /*from*/, int to, double file_w) {
        switch (scheme.kind) {
            case WeightScheme::Kind::Uniform: return scheme.w;
            case WeightScheme::Kind::InverseDegree: return 1.0 / deg[to];
            case WeightScheme::Kind::FromFile: return file_w;
        }
        return 0.0;
    };
    // std::map iteration gives (u,v) sorted, so every row ends up ascending.
    for (const auto& [uv, w] : uniq) {
        auto [u, v] = uv;
        g.csr_targets[cursor[u]] = v;
        g.csr_weights[cursor[u]++] = arc_weight(u, v, w);
        g.csr_targets[cursor[v]] = u;
        g.csr_weights[cursor[v]++] = arc_weight(v, u, w);
    }

    switch (scheme.kind) {
        case WeightScheme::Kind::Uniform:
            g.avg_edge_weight = scheme.w;
            break;
        default: {
            double total = 0.0;
            for (double w : g.csr_weights) total += w;
            g.avg_edge_weight = total / static_cast<double>(2 * g.edge_count);
        }
    }
    return g;
}

namespace {

struct RawEdge {
    long long u, v;
    double w;
};

}  // namespace

WeightedGraph load_edge_list(std::istream& in, const WeightScheme& scheme) {
    std::vector<RawEdge> raw;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) throw ParseError("malformed edge line", line_no);
        if (u < 0 || v < 0) throw ParseError("negative node id", line_no);
        double w = 1.0;
        if (!(ls >> w)) {
            ls.clear();
        } else if (w < 0.0) {
            throw ValidationError("negative edge weight (line " + std::to_string(line_no) + ")");
        }
        std::string trailing;
        if (ls >> trailing) throw ParseError("trailing tokens on edge line", line_no);
        raw.push_back({u, v, w});
    }
    if (raw.empty()) throw ValidationError("empty graph: no edges in input");

    std::vector<long long> ids;
    ids.reserve(2 * raw.size());
    for (const auto& e : raw) {
        ids.push_back(e.u);
        ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    auto remap = [&](long long ext) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), ext) - ids.begin());
    };
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;
    edges.reserve(raw.size());
    std::unordered_set<std::int64_t> seen;
    for (const auto& e : raw) {
        int u = remap(e.u), v = remap(e.v);
        if (u == v) continue;
        int a = std::min(u, v), b = std::max(u, v);
        std::int64_t key = static_cast<std::int64_t>(a) * static_cast<std::int64_t>(ids.size()) + b;
        if (!seen.insert(key).second) continue;  // first occurrence wins
        edges.emplace_back(a, b);
        weights.push_back(e.w);
    }
    if (edges.empty()) throw ValidationError("empty graph: only self-loops in input");

    WeightedGraph g = build_graph(static_cast<int>(ids.size()), edges, scheme,
                                  scheme.kind == WeightScheme::Kind::FromFile
                                      ? weights
                                      : std::vector<double>{});
    g.external_ids = std::move(ids);
    if (!g.is_connected())
        std::cerr << "warning: input graph is not connected\n";
    return g;
}

WeightedGraph load_edge_list_file(const std::string& path, const WeightScheme& scheme) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    return load_edge_list(in, scheme);
}

void write_id_map(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write id map: " + path);
    for (int i = 0; i < g.node_count; ++i)
        out << g.external_ids[i] << ' ' << i << '\n';
}

std::string resolve_graph_path(const std::string& path) {
    if (std::ifstream(path).good()) return path;
    if (!path.empty() && path.front() != '/') {
        if (const char* dir = std::getenv("NADS_DATA_DIR")) {
            std::string joined = std::string(dir) + "/" + path;
            if (std::ifstream(joined).good()) return joined;
        }
    }
    return path;
}

WeightedGraph generate_synthetic(SyntheticKind kind, SyntheticParams p,
                                 std::uint64_t rng_seed, const WeightScheme& scheme) {
    std::vector<std::pair<int, int>> edges;
    int n = 0;
    switch (kind) {
        case SyntheticKind::Path: {
            if (p.a < 2) throw ValidationError("path needs at least 2 nodes");
            n = p.a;
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            break;
        }
        case SyntheticKind::Star: {
            if (p.a < 1) throw ValidationError("star needs at least 1 leaf");
            n = p.a + 1;
            for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
            break;
        }
        case SyntheticKind::Clique: {
            if (p.a < 2) throw ValidationError("clique needs at least 2 nodes");
            n = p.a;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
            break;
        }
        case SyntheticKind::Barbell: {
            if (p.a < 2 || p.b < 1) throw ValidationError("barbell needs clique size >= 2 and path nodes >= 1");
            int k = p.a, mid = p.b;
            n = 2 * k + mid;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) edges.emplace_back(i, j);
            // path from the last node of clique 1 through the interior to the
            // first node of clique 2
            for (int i = k - 1; i < k + mid; ++i) edges.emplace_back(i, i + 1);
            for (int i = k + mid; i < n; ++i)
                for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
            break;
        }
        case SyntheticKind::RandomAttachment: {
            int m = p.b;
            if (m < 1 || p.a < m + 2) throw ValidationError("random_attachment needs n >= m+2, m >= 1");
            n = p.a;
            std::mt19937_64 rng(rng_seed);
            // seed clique of m+1 nodes, then preferential attachment by
            // sampling endpoints of existing edges
            std::vector<int> endpoints;
            for (int i = 0; i <= m; ++i)
                for (int j = i + 1; j <= m; ++j) {
                    edges.emplace_back(i, j);
                    endpoints.push_back(i);
                    endpoints.push_back(j);
                }
            for (int v = m + 1; v < n; ++v) {
                std::unordered_set<int> targets;
                while (static_cast<int>(targets.size()) < m) {
                    int t = endpoints[rng() % endpoints.size()];
                    if (t != v) targets.insert(t);
                }
                for (int t : targets) {
                    edges.emplace_back(std::min(t, v), std::max(t, v));
                    endpoints.push_back(t);
                    endpoints.push_back(v);
                }
            }
            break;
        }
    }
    return build_graph(n, edges, scheme);
}

}  // namespace nads
