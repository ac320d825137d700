#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nads/gip.hpp"
#include "nads/graph.hpp"
#include "nads/search.hpp"

namespace nads {

struct StartSpec {
    enum class Kind { Heuristic, PseudoRandom };
    Kind kind = Kind::Heuristic;
    std::string heuristic = "sd";  // sd | sg | kc | cc | ci
    int count = 1;                 // pseudo-random starts per (method, B)
};

struct ExperimentConfig {
    std::string graph_path;
    std::string dataset;  // defaults to the graph file stem
    WeightScheme scheme = WeightScheme::uniform(0.1);
    GipParams gip;
    SearchConfig search;
    std::vector<int> budgets;
    std::vector<std::string> methods;  // nads cds sd sg kc cc ci
    StartSpec starts;
    double time_budget_per_b = 0.0;  // seconds per unit budget; 0 = none
    std::optional<std::uint64_t> eval_budget;
    std::string output_dir = "out";
    std::uint64_t rng_seed = 0;
    int ci_radius = 2;

    void validate() const;
};

/// INI-style key=value config (section headers allowed and ignored).
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

struct RunRecord {
    std::string method;
    std::string start_label;  // heuristic name, randomN, or "-" for one-shots
    int B = 0;
    SeedSet seeds;
    double score = 0.0;
    std::vector<TracePoint> trace;
    std::string termination;
    std::uint64_t evals = 0;
    double wall_s = 0.0;
};

struct ExperimentReport {
    std::string dataset;
    std::vector<RunRecord> runs;
    std::vector<int> budgets;
    double time_budget_per_b = 0.0;
    std::optional<std::uint64_t> eval_budget;
    std::vector<std::pair<long long, int>> id_map;  // external -> internal
};

ExperimentReport run_experiment(const ExperimentConfig& config);

struct GapSeries {
    std::string method;
    std::string start_label;
    int B = 0;
    std::vector<std::pair<double, double>> rows;  // (elapsed_s, gap) at trace points
    std::array<double, 5> pct{};                  // samples at 15/30/50/75/100% of budget
    double reference_m = 0.0;
};

constexpr std::array<double, 5> kGapPercents{0.15, 0.30, 0.50, 0.75, 1.00};

/// Relative gaps g(t) = (m - s(t))/m for each run against the shared
/// reference m (the best final score among the runs). The percent samples
/// use the wall-clock budget when one is set, otherwise the eval budget,
/// otherwise each run's own extent. Throws ValidationError when m <= 0.
std::vector<GapSeries> compute_gap_series(const std::vector<RunRecord>& runs,
                                          double reference_m,
                                          double time_budget_s = 0.0,
                                          std::uint64_t eval_budget = 0);

/// Writes summary.csv, one trace_<method>_<B>_<start>.csv per run,
/// gaps_<B>.csv, and the <dataset>.ids mapping. Six decimal places, newline
/// line terminator.
void emit_outputs(const ExperimentReport& report, const std::string& output_dir);

/// Writes gaps_<B>.csv for every budget present in `runs`. Budgets whose best
/// score is not positive are skipped.
void write_gap_files(const std::vector<RunRecord>& runs, const std::string& output_dir,
                     double time_budget_per_b = 0.0, std::uint64_t eval_budget = 0);

/// Seed selection by heuristic name (sd, sg, kc, cc, ci).
SeedSet heuristic_start(const std::string& name, const WeightedGraph& graph,
                        const GipParams& params, int B, int ci_radius = 2,
                        int threads = 0);

}  // namespace nads
