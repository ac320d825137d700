#include "nads/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "nads/errors.hpp"
#include "nads/heuristics.hpp"
#include "nads/oracle.hpp"

namespace nads {

namespace {

const std::vector<std::string> kHeuristicMethods{"sd", "sg", "kc", "cc", "ci"};

bool is_heuristic_method(const std::string& m) {
    return std::find(kHeuristicMethods.begin(), kHeuristicMethods.end(), m) !=
           kHeuristicMethods.end();
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

WeightScheme parse_scheme(const std::string& text) {
    if (text == "invdeg" || text == "inverse_degree") return WeightScheme::inverse_degree();
    if (text == "file" || text == "from_file") return WeightScheme::from_file();
    if (text.rfind("uniform:", 0) == 0) return WeightScheme::uniform(std::stod(text.substr(8)));
    throw ValidationError("unknown weight scheme: " + text);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError("expected a boolean, got: " + v);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (graph_path.empty()) throw ValidationError("config: graph_path is required");
    if (budgets.empty()) throw ValidationError("config: at least one budget is required");
    if (methods.empty()) throw ValidationError("config: at least one method is required");
    for (int b : budgets)
        if (b < 1) throw ValidationError("config: budgets must be positive");
    for (const auto& m : methods)
        if (m != "nads" && m != "cds" && !is_heuristic_method(m))
            throw ValidationError("config: unknown method: " + m);
    if (time_budget_per_b < 0.0)
        throw ValidationError("config: time budget multiplier must be positive when set");
    if (starts.kind == StartSpec::Kind::PseudoRandom && starts.count < 1)
        throw ValidationError("config: pseudo-random start count must be >= 1");
    search.validate();
    gip.validate();
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';' || t[0] == '[') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        try {
            if (key == "graph_path") cfg.graph_path = val;
            else if (key == "dataset") cfg.dataset = val;
            else if (key == "weights") cfg.scheme = parse_scheme(val);
            else if (key == "theta_l") cfg.gip.theta_l = std::stod(val);
            else if (key == "theta_h") cfg.gip.theta_h = std::stod(val);
            else if (key == "gamma") cfg.gip.gamma = std::stod(val);
            else if (key == "epsilon") cfg.gip.epsilon = std::stod(val);
            else if (key == "l0") cfg.gip.l0 = std::stod(val);
            else if (key == "h0") cfg.gip.h0 = std::stod(val);
            else if (key == "include_t0") cfg.gip.include_t0 = parse_bool(val);
            else if (key == "max_steps") cfg.gip.max_steps = std::stoi(val);
            else if (key == "zeta0") cfg.search.zeta0 = std::stod(val);
            else if (key == "delta") cfg.search.delta = std::stod(val);
            else if (key == "d_max") cfg.search.d_max = std::stoi(val);
            else if (key == "phase3") cfg.search.phase3_enabled = parse_bool(val);
            else if (key == "ordering")
                cfg.search.ordering = val == "degree_descending" ? Ordering::DegreeDescending
                                                                 : Ordering::Lexicographic;
            else if (key == "threads") cfg.search.threads = std::stoi(val);
            else if (key == "chunk") cfg.search.chunk = std::stoi(val);
            else if (key == "budgets") {
                cfg.budgets.clear();
                for (const auto& b : split(val, ',')) cfg.budgets.push_back(std::stoi(b));
            } else if (key == "methods") {
                cfg.methods = split(val, ',');
            } else if (key == "starts") {
                if (val.rfind("random", 0) == 0) {
                    cfg.starts.kind = StartSpec::Kind::PseudoRandom;
                    std::size_t colon = val.find(':');
                    cfg.starts.count = colon == std::string::npos ? 1
                                                                  : std::stoi(val.substr(colon + 1));
                } else {
                    cfg.starts.kind = StartSpec::Kind::Heuristic;
                    cfg.starts.heuristic = val;
                }
            } else if (key == "time_budget_per_b") {
                cfg.time_budget_per_b = std::stod(val);
            } else if (key == "eval_budget") {
                if (!val.empty()) cfg.eval_budget = std::stoull(val);
            } else if (key == "output_dir") {
                cfg.output_dir = val;
            } else if (key == "rng_seed") {
                cfg.rng_seed = std::stoull(val);
            } else if (key == "ci_radius") {
                cfg.ci_radius = std::stoi(val);
            } else {
                throw ValidationError("unknown config key: " + key);
            }
        } catch (const std::invalid_argument&) {
            throw ParseError("bad value for " + key, line_no);
        } catch (const std::out_of_range&) {
            throw ParseError("value out of range for " + key, line_no);
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config(in);
}

namespace {

using Clock = std::chrono::steady_clock;

SeedSet heuristic_select(const std::string& name, const WeightedGraph& graph,
                         const GipParams& params, int B, int ci_radius, int threads,
                         EvalCache& cache) {
    if (name == "sd") return single_discount(graph, B).selected;
    if (name == "sg") return simple_greedy(graph, params, B, cache, threads).selected;
    if (name == "kc") return katz_top(graph, params, B).selected;
    if (name == "cc") return kcore_top(graph, B).selected;
    if (name == "ci") return collective_influence(graph, ci_radius, B).selected;
    throw ValidationError("unknown heuristic: " + name);
}

RunRecord run_heuristic(const ExperimentConfig& cfg, const WeightedGraph& graph,
                        const std::string& method, int B) {
    RunRecord rec;
    rec.method = method;
    rec.start_label = "-";
    rec.B = B;
    EvalCache cache;
    auto t0 = Clock::now();
    rec.seeds = heuristic_select(method, graph, cfg.gip, B, cfg.ci_radius,
                                 cfg.search.threads, cache);
    rec.score = objective(graph, cfg.gip, rec.seeds, cache);
    rec.wall_s = std::chrono::duration<double>(Clock::now() - t0).count();
    rec.evals = cache.eval_count();
    rec.termination = "heuristic";
    rec.trace.push_back({rec.wall_s, rec.evals, rec.score});
    return rec;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    WeightedGraph graph = load_edge_list_file(resolve_graph_path(cfg.graph_path), cfg.scheme);
    cfg.gip.require_feasible(graph.avg_edge_weight);

    ExperimentReport report;
    report.dataset = cfg.dataset;
    if (report.dataset.empty())
        report.dataset = std::filesystem::path(cfg.graph_path).stem().string();
    report.budgets = cfg.budgets;
    report.time_budget_per_b = cfg.time_budget_per_b;
    report.eval_budget = cfg.eval_budget;
    for (int i = 0; i < graph.node_count; ++i)
        report.id_map.emplace_back(graph.external_ids[i], i);

    for (int B : cfg.budgets) {
        // starting points shared by the direct-search methods at this budget
        std::vector<std::pair<std::string, SeedSet>> starts;
        if (cfg.starts.kind == StartSpec::Kind::Heuristic) {
            EvalCache scratch;
            starts.emplace_back(cfg.starts.heuristic,
                                heuristic_select(cfg.starts.heuristic, graph, cfg.gip, B,
                                                 cfg.ci_radius, cfg.search.threads, scratch));
        } else {
            for (int i = 0; i < cfg.starts.count; ++i)
                starts.emplace_back("random" + std::to_string(i),
                                    pseudo_random_start(graph, B, cfg.rng_seed + i));
        }

        for (const auto& method : cfg.methods) {
            if (is_heuristic_method(method)) {
                report.runs.push_back(run_heuristic(cfg, graph, method, B));
                continue;
            }
            SearchConfig sc = cfg.search;
            sc.rng_seed = cfg.rng_seed;
            if (cfg.time_budget_per_b > 0.0) sc.time_budget_s = cfg.time_budget_per_b * B;
            sc.eval_budget = cfg.eval_budget;
            for (const auto& [label, start] : starts) {
                SearchResult res = method == "nads" ? run_nads(graph, cfg.gip, sc, start)
                                                    : run_cds(graph, cfg.gip, sc, start);
                RunRecord rec;
                rec.method = method;
                rec.start_label = label;
                rec.B = B;
                rec.seeds = res.seeds;
                rec.score = res.score;
                rec.trace = res.trace;
                rec.termination = termination_label(res.termination, res.local_radius);
                rec.evals = res.evals;
                rec.wall_s = res.elapsed_s;
                report.runs.push_back(std::move(rec));
            }
        }
    }
    return report;
}

std::vector<GapSeries> compute_gap_series(const std::vector<RunRecord>& runs,
                                          double reference_m, double time_budget_s,
                                          std::uint64_t eval_budget) {
    if (!(reference_m > 0.0))
        throw ValidationError("degenerate gap reference: best score must be positive");
    std::vector<GapSeries> out;
    for (const auto& run : runs) {
        GapSeries gs;
        gs.method = run.method;
        gs.start_label = run.start_label;
        gs.B = run.B;
        gs.reference_m = reference_m;
        for (const auto& tp : run.trace)
            gs.rows.emplace_back(tp.elapsed_s, (reference_m - tp.score) / reference_m);
        for (std::size_t p = 0; p < kGapPercents.size(); ++p) {
            double s = run.trace.empty() ? 0.0 : run.trace.front().score;
            if (time_budget_s > 0.0) {
                double mark = kGapPercents[p] * time_budget_s;
                for (const auto& tp : run.trace)
                    if (tp.elapsed_s <= mark) s = tp.score;
            } else if (eval_budget > 0) {
                double mark = kGapPercents[p] * static_cast<double>(eval_budget);
                for (const auto& tp : run.trace)
                    if (static_cast<double>(tp.evals) <= mark) s = tp.score;
            } else if (!run.trace.empty()) {
                double mark = kGapPercents[p] * run.trace.back().elapsed_s;
                for (const auto& tp : run.trace)
                    if (tp.elapsed_s <= mark) s = tp.score;
            }
            gs.pct[p] = (reference_m - s) / reference_m;
        }
        out.push_back(std::move(gs));
    }
    return out;
}

void emit_outputs(const ExperimentReport& report, const std::string& output_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) throw IoError("cannot create output dir: " + output_dir);
    auto open_out = [&](const std::string& name) {
        std::ofstream f(output_dir + "/" + name);
        if (!f) throw IoError("cannot write " + output_dir + "/" + name);
        return f;
    };

    {
        auto f = open_out("summary.csv");
        f << "dataset,method,B,start,score,time_s,evals\n";
        for (const auto& r : report.runs)
            f << report.dataset << ',' << r.method << ',' << r.B << ',' << r.start_label << ','
              << fmt6(r.score) << ',' << fmt6(r.wall_s) << ',' << r.evals << '\n';
        // mean/best aggregate rows over pseudo-random starts
        std::map<std::pair<std::string, int>, std::vector<const RunRecord*>> groups;
        for (const auto& r : report.runs)
            if (r.start_label.rfind("random", 0) == 0) groups[{r.method, r.B}].push_back(&r);
        for (const auto& [key, rs] : groups) {
            if (rs.size() < 2) continue;
            double mean_score = 0, mean_time = 0, best_score = rs[0]->score;
            double mean_evals = 0;
            for (const auto* r : rs) {
                mean_score += r->score;
                mean_time += r->wall_s;
                mean_evals += static_cast<double>(r->evals);
                best_score = std::max(best_score, r->score);
            }
            double k = static_cast<double>(rs.size());
            f << report.dataset << ',' << key.first << ',' << key.second << ",mean,"
              << fmt6(mean_score / k) << ',' << fmt6(mean_time / k) << ','
              << std::llround(mean_evals / k) << '\n';
            f << report.dataset << ',' << key.first << ',' << key.second << ",best,"
              << fmt6(best_score) << ',' << fmt6(mean_time / k) << ','
              << std::llround(mean_evals / k) << '\n';
        }
    }

    for (const auto& r : report.runs) {
        auto f = open_out("trace_" + r.method + "_" + std::to_string(r.B) + "_" +
                          r.start_label + ".csv");
        f << "elapsed_s,evals,score\n";
        for (const auto& tp : r.trace)
            f << fmt6(tp.elapsed_s) << ',' << tp.evals << ',' << fmt6(tp.score) << '\n';
    }

    write_gap_files(report.runs, output_dir, report.time_budget_per_b,
                    report.eval_budget.value_or(0));

    {
        auto f = open_out(report.dataset + ".ids");
        for (const auto& [ext, internal] : report.id_map) f << ext << ' ' << internal << '\n';
    }
}

void write_gap_files(const std::vector<RunRecord>& runs, const std::string& output_dir,
                     double time_budget_per_b, std::uint64_t eval_budget) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) throw IoError("cannot create output dir: " + output_dir);
    std::vector<int> budgets;
    for (const auto& r : runs)
        if (std::find(budgets.begin(), budgets.end(), r.B) == budgets.end())
            budgets.push_back(r.B);
    std::sort(budgets.begin(), budgets.end());

    for (int B : budgets) {
        std::vector<RunRecord> group;
        for (const auto& r : runs)
            if (r.B == B) group.push_back(r);
        double m = group.front().score;
        for (const auto& r : group) m = std::max(m, r.score);
        if (!(m > 0.0)) continue;  // no gaps when nothing scored
        auto series = compute_gap_series(group, m,
                                         time_budget_per_b > 0.0 ? time_budget_per_b * B : 0.0,
                                         eval_budget);
        std::ofstream f(output_dir + "/gaps_" + std::to_string(B) + ".csv");
        if (!f) throw IoError("cannot write gaps file in " + output_dir);
        f << "method,start,pct15,pct30,pct50,pct75,pct100\n";
        for (const auto& gs : series) {
            f << gs.method << ',' << gs.start_label;
            for (double g : gs.pct) f << ',' << fmt6(g);
            f << '\n';
        }
        // per-method means across starts
        std::map<std::string, std::pair<std::array<double, 5>, int>> means;
        for (const auto& gs : series) {
            auto& [acc, cnt] = means[gs.method];
            for (std::size_t i = 0; i < gs.pct.size(); ++i) acc[i] += gs.pct[i];
            ++cnt;
        }
        for (const auto& [method, acc_cnt] : means) {
            if (acc_cnt.second < 2) continue;
            f << method << ",mean";
            for (double g : acc_cnt.first) f << ',' << fmt6(g / acc_cnt.second);
            f << '\n';
        }
    }
}

SeedSet heuristic_start(const std::string& name, const WeightedGraph& graph,
                        const GipParams& params, int B, int ci_radius, int threads) {
    EvalCache cache;
    return heuristic_select(name, graph, params, B, ci_radius, threads, cache);
}

}  // namespace nads
