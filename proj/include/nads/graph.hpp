#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nads {

/// How edge weights are assigned when building a graph.
/// uniform(w): every edge gets weight w.
/// inverse_degree: arc i->j gets 1/deg(j); arc weights are asymmetric but
///   arc existence stays symmetric.
/// from_file: weight taken from the third edge-list column (1.0 if absent).
struct WeightScheme {
    enum class Kind { Uniform, InverseDegree, FromFile };
    Kind kind = Kind::Uniform;
    double w = 0.1;

    static WeightScheme uniform(double w);
    static WeightScheme inverse_degree() { return {Kind::InverseDegree, 0.0}; }
    static WeightScheme from_file() { return {Kind::FromFile, 0.0}; }
};

/// Immutable undirected weighted graph in CSR form. Each undirected edge is
/// stored as two directed arcs; csr_weights[k] is W_uv for the arc u->v, the
/// weight with which u's state enters v's input sum. Safe to share across
/// threads once built.
struct WeightedGraph {
    int node_count = 0;
    std::vector<std::int64_t> csr_offsets;  // length node_count+1, nondecreasing
    std::vector<int> csr_targets;           // neighbors of u sorted ascending
    std::vector<double> csr_weights;
    std::int64_t edge_count = 0;            // undirected count
    double avg_edge_weight = 0.0;           // alpha
    std::vector<long long> external_ids;    // internal id -> original id, ascending

    int degree(int u) const { return static_cast<int>(csr_offsets[u + 1] - csr_offsets[u]); }
    std::span<const int> neighbors(int u) const {
        return {csr_targets.data() + csr_offsets[u], csr_targets.data() + csr_offsets[u + 1]};
    }
    std::span<const double> arc_weights(int u) const {
        return {csr_weights.data() + csr_offsets[u], csr_weights.data() + csr_offsets[u + 1]};
    }
    std::optional<int> internal_id(long long external) const;
    long long external_id(int internal) const { return external_ids[internal]; }
    bool is_connected() const;
};

/// Parses a SNAP-style edge list: `u v` or `u v w` per line, `#` comments.
/// Ids are remapped so that external ids sorted ascending become 0..n-1.
/// Duplicate edges collapse (first weight wins under from_file); self-loops
/// are dropped. Throws ParseError / ValidationError.
WeightedGraph load_edge_list(std::istream& in, const WeightScheme& scheme);
WeightedGraph load_edge_list_file(const std::string& path, const WeightScheme& scheme);

/// Writes the companion id-mapping file: one `external internal` line per node.
void write_id_map(const WeightedGraph& g, const std::string& path);

/// Resolves a graph path, trying NADS_DATA_DIR as a prefix for relative
/// paths that do not exist as given.
std::string resolve_graph_path(const std::string& path);

enum class SyntheticKind { Path, Star, Clique, Barbell, RandomAttachment };

/// Parameters per kind:
///   Path:             a = node count (>= 2)
///   Star:             a = leaf count (>= 1)
///   Clique:           a = node count (>= 2)
///   Barbell:          a = clique size (>= 2), b = interior path nodes (>= 1)
///   RandomAttachment: a = node count, b = edges added per new node (>= 1)
struct SyntheticParams {
    int a = 0;
    int b = 0;
};

WeightedGraph generate_synthetic(SyntheticKind kind, SyntheticParams params,
                                 std::uint64_t rng_seed,
                                 const WeightScheme& scheme = WeightScheme::uniform(0.1));

/// Builds a graph from an explicit undirected edge list over nodes 0..n-1.
/// Used by the synthetic generators and tests.
WeightedGraph build_graph(int node_count,
                          const std::vector<std::pair<int, int>>& edges,
                          const WeightScheme& scheme,
                          const std::vector<double>& file_weights = {});

}  // namespace nads
