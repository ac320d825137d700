#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nads/bench.hpp"
#include "nads/errors.hpp"
#include "nads/gip.hpp"
#include "nads/graph.hpp"
#include "nads/heuristics.hpp"
#include "nads/oracle.hpp"
#include "nads/search.hpp"

namespace {

using namespace nads;

std::string format_seeds(const WeightedGraph& g, const SeedSet& s) {
    std::ostringstream out;
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
        if (i) out << ',';
        out << g.external_id(s.nodes[i]);
    }
    return out.str();
}

WeightScheme scheme_from_flag(const std::string& text) {
    if (text == "invdeg") return WeightScheme::inverse_degree();
    if (text == "file") return WeightScheme::from_file();
    if (text.rfind("uniform:", 0) == 0) return WeightScheme::uniform(std::stod(text.substr(8)));
    throw ValidationError("unknown weight scheme: " + text +
                          " (expected uniform:<w>, invdeg, or file)");
}

SeedSet resolve_start(const std::string& spec, const WeightedGraph& graph,
                      const GipParams& gip, int B, int threads) {
    if (spec.rfind("random:", 0) == 0)
        return pseudo_random_start(graph, B, std::stoull(spec.substr(7)));
    return heuristic_start(spec, graph, gip, B, 2, threads);
}

void write_solve_outputs(const std::string& out_dir, const WeightedGraph& graph,
                         const std::string& method, int B, const std::string& start,
                         const SearchResult& res) {
    RunRecord rec;
    rec.method = method;
    rec.start_label = start;
    rec.B = B;
    rec.seeds = res.seeds;
    rec.score = res.score;
    rec.trace = res.trace;
    rec.termination = termination_label(res.termination, res.local_radius);
    rec.evals = res.evals;
    rec.wall_s = res.elapsed_s;
    ExperimentReport report;
    report.dataset = "solve";
    report.runs.push_back(std::move(rec));
    report.budgets = {B};
    for (int i = 0; i < graph.node_count; ++i)
        report.id_map.emplace_back(graph.external_id(i), i);
    emit_outputs(report, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Influence-maximization solvers for the GIP propagation model"};
    app.require_subcommand(1);

    GipParams gip;
    std::string out_dir;
    std::uint64_t rng_seed = 0;
    int threads = 0;
    app.add_option("--gamma", gip.gamma, "time-discount factor");
    app.add_option("--epsilon", gip.epsilon, "propagation stop tolerance");
    app.add_option("--theta-l", gip.theta_l, "lower-bound schedule parameter");
    app.add_option("--theta-h", gip.theta_h, "upper-bound schedule parameter");
    app.add_option("--l0", gip.l0, "initial lower bound");
    app.add_option("--h0", gip.h0, "initial upper bound");
    app.add_flag("--include-t0", gip.include_t0, "add the t=0 seed term to scores");
    app.add_option("--rng-seed", rng_seed, "random seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "parallel evaluation threads (0 = serial)");

    auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
    std::string config_path;
    run_cmd->add_option("--config", config_path, "experiment config")->required();

    auto* heur_cmd = app.add_subcommand("heuristic", "rank seeds with a one-shot heuristic");
    std::string graph_path, method, weights = "uniform:0.1";
    int budget = 0;
    heur_cmd->add_option("--graph", graph_path)->required();
    heur_cmd->add_option("--method", method, "sd|sg|kc|cc|ci")->required();
    heur_cmd->add_option("--budget", budget)->required();
    heur_cmd->add_option("--weights", weights, "uniform:<w>|invdeg|file");

    auto* solve_cmd = app.add_subcommand("solve", "run a direct-search method");
    std::string solve_graph, solve_method, start_spec = "sd", solve_weights = "uniform:0.1";
    int solve_budget = 0;
    double time_budget = 0.0, zeta0 = 0.01, delta = 0.5;
    std::uint64_t eval_budget = 0;
    int dmax = 2;
    bool phase3 = false;
    solve_cmd->add_option("--graph", solve_graph)->required();
    solve_cmd->add_option("--method", solve_method, "nads|cds")->required();
    solve_cmd->add_option("--budget", solve_budget)->required();
    solve_cmd->add_option("--start", start_spec, "sd|sg|kc|cc|ci|random:<seed>");
    solve_cmd->add_option("--weights", solve_weights);
    solve_cmd->add_option("--time-budget", time_budget, "seconds");
    solve_cmd->add_option("--eval-budget", eval_budget, "objective evaluations");
    solve_cmd->add_option("--zeta0", zeta0);
    solve_cmd->add_option("--delta", delta);
    solve_cmd->add_option("--dmax", dmax);
    solve_cmd->add_flag("--phase3", phase3);

    auto* verify_cmd = app.add_subcommand("verify", "check a d-local-maximum certificate");
    std::string verify_graph, seeds_csv, verify_weights = "uniform:0.1";
    int verify_d = 2;
    verify_cmd->add_option("--graph", verify_graph)->required();
    verify_cmd->add_option("--seeds", seeds_csv, "comma-separated external ids")->required();
    verify_cmd->add_option("--d", verify_d, "neighborhood radius (even)");
    verify_cmd->add_option("--weights", verify_weights);

    auto* gaps_cmd = app.add_subcommand("gaps", "recompute relative-gap tables from traces");
    std::string traces_dir;
    double gaps_per_b = 0.0;
    gaps_cmd->add_option("--traces", traces_dir, "directory of trace_*.csv files")->required();
    gaps_cmd->add_option("--time-budget-per-b", gaps_per_b, "seconds per unit budget");

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();  // global flags may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run_cmd) {
            ExperimentConfig cfg = parse_config_file(config_path);
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            ExperimentReport report = run_experiment(cfg);
            emit_outputs(report, cfg.output_dir);
            std::cout << "wrote " << report.runs.size() << " runs to " << cfg.output_dir << '\n';
        } else if (*heur_cmd) {
            WeightedGraph g = load_edge_list_file(resolve_graph_path(graph_path),
                                                  scheme_from_flag(weights));
            gip.require_feasible(g.avg_edge_weight);
            auto t0 = std::chrono::steady_clock::now();
            SeedSet s = heuristic_start(method, g, gip, budget, 2, threads);
            EvalCache cache;
            double score = objective(g, gip, s, cache);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::cout << "method=" << method << " budget=" << budget << '\n'
                      << "seeds=" << format_seeds(g, s) << '\n'
                      << "score=" << score << " time_s=" << secs << '\n';
        } else if (*solve_cmd) {
            if (solve_method != "nads" && solve_method != "cds")
                throw ValidationError("method must be nads or cds");
            WeightedGraph g = load_edge_list_file(resolve_graph_path(solve_graph),
                                                  scheme_from_flag(solve_weights));
            SearchConfig sc;
            sc.zeta0 = zeta0;
            sc.delta = delta;
            sc.d_max = dmax;
            sc.phase3_enabled = phase3;
            sc.rng_seed = rng_seed;
            sc.threads = threads;
            if (time_budget > 0.0) sc.time_budget_s = time_budget;
            if (eval_budget > 0) sc.eval_budget = eval_budget;
            SeedSet start = resolve_start(start_spec, g, gip, solve_budget, threads);
            SearchResult res = solve_method == "nads" ? run_nads(g, gip, sc, start)
                                                      : run_cds(g, gip, sc, start);
            std::cout << "method=" << solve_method << " budget=" << solve_budget
                      << " start=" << start_spec << '\n'
                      << "seeds=" << format_seeds(g, res.seeds) << '\n'
                      << "score=" << res.score << '\n'
                      << "termination=" << termination_label(res.termination, res.local_radius)
                      << " evals=" << res.evals << " time_s=" << res.elapsed_s << '\n'
                      << "polls=" << res.stats.polls
                      << " accepts=" << res.stats.phase1_accepts << '/'
                      << res.stats.phase2_accepts << '/' << res.stats.phase3_accepts
                      << " filtered=" << res.stats.filtered_by_restriction << '\n';
            if (!out_dir.empty())
                write_solve_outputs(out_dir, g, solve_method, solve_budget, start_spec, res);
        } else if (*verify_cmd) {
            WeightedGraph g = load_edge_list_file(resolve_graph_path(verify_graph),
                                                  scheme_from_flag(verify_weights));
            std::vector<int> ids;
            std::stringstream ss(seeds_csv);
            std::string token;
            while (std::getline(ss, token, ',')) {
                long long ext = std::stoll(token);
                auto internal = g.internal_id(ext);
                if (!internal) throw ValidationError("unknown node id: " + token);
                ids.push_back(*internal);
            }
            SeedSet z = SeedSet::of(std::move(ids), static_cast<int>(ids.size()));
            OracleReport report = verify_local_maximum(g, gip, z, verify_d);
            std::cout << "score=" << report.optimum_score << " d=" << verify_d
                      << " evaluated=" << report.evaluated << '\n'
                      << "local_maximum=" << (report.witnesses.empty() ? "true" : "false") << '\n';
            for (const auto& [w, s] : report.witnesses)
                std::cout << "witness seeds=" << format_seeds(g, w) << " score=" << s << '\n';
        } else if (*gaps_cmd) {
            namespace fs = std::filesystem;
            std::vector<RunRecord> runs;
            for (const auto& entry : fs::directory_iterator(traces_dir)) {
                std::string name = entry.path().filename().string();
                if (name.rfind("trace_", 0) != 0 || entry.path().extension() != ".csv") continue;
                std::string stem = entry.path().stem().string().substr(6);
                auto p1 = stem.find('_');
                auto p2 = stem.find('_', p1 + 1);
                if (p1 == std::string::npos || p2 == std::string::npos)
                    throw ValidationError("unrecognized trace file name: " + name);
                RunRecord rec;
                rec.method = stem.substr(0, p1);
                rec.B = std::stoi(stem.substr(p1 + 1, p2 - p1 - 1));
                rec.start_label = stem.substr(p2 + 1);
                std::ifstream f(entry.path());
                if (!f) throw IoError("cannot read " + name);
                std::string line;
                std::getline(f, line);  // header
                while (std::getline(f, line)) {
                    TracePoint tp;
                    unsigned long long evals = 0;
                    if (std::sscanf(line.c_str(), "%lf,%llu,%lf", &tp.elapsed_s, &evals,
                                    &tp.score) == 3) {
                        tp.evals = evals;
                        rec.trace.push_back(tp);
                    }
                }
                if (rec.trace.empty()) throw ValidationError("empty trace: " + name);
                rec.score = rec.trace.back().score;
                rec.evals = rec.trace.back().evals;
                rec.wall_s = rec.trace.back().elapsed_s;
                runs.push_back(std::move(rec));
            }
            if (runs.empty()) throw ValidationError("no trace files in " + traces_dir);
            std::string dir = out_dir.empty() ? traces_dir : out_dir;
            write_gap_files(runs, dir, gaps_per_b, 0);
            std::cout << "wrote gap tables for " << runs.size() << " traces to " << dir << '\n';
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
