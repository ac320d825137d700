#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "nads/bench.hpp"
#include "nads/errors.hpp"
#include "test_util.hpp"

using namespace nads;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(NADS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_star4_file(const std::string& dir) {
    testing::shell(("mkdir -p " + dir));
    std::string path = dir + "/star4.txt";
    std::ofstream f(path);
    f << "0 1\n0 2\n0 3\n";
    return path;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(f, line)) lines.push_back(line);
    return lines;
}

ExperimentConfig star4_config(const std::string& dir) {
    ExperimentConfig cfg;
    cfg.graph_path = write_star4_file(dir);
    cfg.dataset = "star4";
    cfg.gip = testing::fixture_params();
    cfg.budgets = {2};
    cfg.methods = {"sg", "nads"};
    cfg.starts.kind = StartSpec::Kind::Heuristic;
    cfg.starts.heuristic = "sd";
    cfg.output_dir = dir + "/out";
    return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
    std::istringstream in(
        "# experiment\n"
        "[graph]\n"
        "graph_path = g.txt\n"
        "weights = uniform:0.25\n"
        "[gip]\n"
        "theta_l = 2\n"
        "gamma = 0.0\n"
        "[experiment]\n"
        "budgets = 2, 5\n"
        "methods = nads, cds, sd\n"
        "starts = random:4\n"
        "time_budget_per_b = 1.5\n"
        "eval_budget = 500\n"
        "rng_seed = 9\n"
        "output_dir = results\n");
    ExperimentConfig cfg = parse_config(in);
    CHECK(cfg.graph_path == "g.txt");
    CHECK(cfg.scheme.kind == WeightScheme::Kind::Uniform);
    CHECK(cfg.scheme.w == 0.25);
    CHECK(cfg.budgets == std::vector<int>{2, 5});
    CHECK(cfg.methods == std::vector<std::string>{"nads", "cds", "sd"});
    CHECK(cfg.starts.kind == StartSpec::Kind::PseudoRandom);
    CHECK(cfg.starts.count == 4);
    CHECK(cfg.time_budget_per_b == 1.5);
    CHECK(cfg.eval_budget == 500);
    CHECK(cfg.rng_seed == 9);

    std::istringstream bad_key("nonsense = 1\n");
    CHECK_THROWS_AS(parse_config(bad_key), ValidationError);
    std::istringstream bad_val("theta_l = abc\n");
    CHECK_THROWS_AS(parse_config(bad_val), ParseError);
    std::istringstream no_eq("just words\n");
    CHECK_THROWS_AS(parse_config(no_eq), ParseError);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.graph_path = "g.txt";
    cfg.budgets = {2};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);  // no methods
    cfg.methods = {"nads"};
    cfg.validate();
    cfg.methods = {"bogus"};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.methods = {"nads"};
    cfg.budgets = {0};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("run_experiment on the star fixture") {
    std::string dir = "bench_test_tmp";
    testing::shell(("rm -rf " + dir));
    ExperimentConfig cfg = star4_config(dir);
    ExperimentReport report = run_experiment(cfg);

    REQUIRE(report.runs.size() == 2);
    const RunRecord* sg = nullptr;
    const RunRecord* nads_run = nullptr;
    for (const auto& r : report.runs) {
        if (r.method == "sg") sg = &r;
        if (r.method == "nads") nads_run = &r;
    }
    REQUIRE(sg != nullptr);
    REQUIRE(nads_run != nullptr);
    CHECK(sg->score == 0.0);
    CHECK(nads_run->score == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(nads_run->start_label == "sd");
    CHECK(nads_run->score >= sg->score);
    CHECK(nads_run->trace.back().score == nads_run->score);

    SUBCASE("outputs") {
        emit_outputs(report, cfg.output_dir);
        auto summary = read_lines(cfg.output_dir + "/summary.csv");
        CHECK(summary[0] == "dataset,method,B,start,score,time_s,evals");
        REQUIRE(summary.size() == 3);
        CHECK(summary[2].find("star4,nads,2,sd,0.200000,") == 0);
        auto trace = read_lines(cfg.output_dir + "/trace_nads_2_sd.csv");
        CHECK(trace[0] == "elapsed_s,evals,score");
        CHECK(trace.size() == 3);  // start + one improvement
        auto gaps = read_lines(cfg.output_dir + "/gaps_2.csv");
        CHECK(gaps[0] == "method,start,pct15,pct30,pct50,pct75,pct100");
        auto ids = read_lines(cfg.output_dir + "/star4.ids");
        CHECK(ids.size() == 4);
        CHECK(ids[0] == "0 0");
    }
    testing::shell(("rm -rf " + dir));
}

TEST_CASE("pseudo-random starts produce per-start rows and aggregates") {
    std::string dir = "bench_test_tmp2";
    testing::shell(("rm -rf " + dir));
    ExperimentConfig cfg = star4_config(dir);
    cfg.methods = {"nads"};
    cfg.starts.kind = StartSpec::Kind::PseudoRandom;
    cfg.starts.count = 3;
    cfg.rng_seed = 5;
    ExperimentReport report = run_experiment(cfg);
    CHECK(report.runs.size() == 3);
    emit_outputs(report, cfg.output_dir);
    auto summary = read_lines(cfg.output_dir + "/summary.csv");
    REQUIRE(summary.size() == 6);  // header + 3 runs + mean + best
    CHECK(summary[4].find(",mean,") != std::string::npos);
    CHECK(summary[5].find(",best,") != std::string::npos);
    for (int i = 0; i < 3; ++i) {
        std::string name = cfg.output_dir + "/trace_nads_2_random" + std::to_string(i) + ".csv";
        CHECK(read_lines(name).size() >= 2);
    }
    testing::shell(("rm -rf " + dir));
}

TEST_CASE("gap series math and layout") {
    RunRecord fast;
    fast.method = "nads";
    fast.start_label = "sd";
    fast.B = 2;
    fast.trace = {{0.0, 1, 50.0}, {2.0, 10, 80.0}, {6.0, 50, 100.0}};
    fast.score = 100.0;
    RunRecord slow;
    slow.method = "cds";
    slow.start_label = "sd";
    slow.B = 2;
    slow.trace = {{0.0, 1, 50.0}, {9.0, 80, 90.0}};
    slow.score = 90.0;

    auto series = compute_gap_series({fast, slow}, 100.0, 10.0, 0);
    REQUIRE(series.size() == 2);
    const GapSeries& f = series[0];
    CHECK(f.pct[0] == doctest::Approx(0.5));   // 15% -> t=1.5, incumbent 50
    CHECK(f.pct[1] == doctest::Approx(0.2));   // 30% -> t=3.0, incumbent 80
    CHECK(f.pct[2] == doctest::Approx(0.2));   // 50% -> t=5.0
    CHECK(f.pct[3] == doctest::Approx(0.0));   // 75% -> t=7.5, incumbent 100
    CHECK(f.pct[4] == doctest::Approx(0.0));
    CHECK(f.rows.back().second == 0.0);  // best method's final gap

    const GapSeries& s = series[1];
    CHECK(s.pct[4] == doctest::Approx(0.1));
    for (const auto& gs : series) {
        double prev = 1.0;
        for (double g : gs.pct) {
            CHECK(g >= 0.0);
            CHECK(g <= 1.0);
            CHECK(g <= prev + 1e-15);
            prev = g;
        }
    }

    SUBCASE("eval-axis sampling when no time budget is set") {
        auto by_evals = compute_gap_series({fast}, 100.0, 0.0, 100);
        CHECK(by_evals[0].pct[0] == doctest::Approx(0.2));  // 15 evals -> incumbent 80
        CHECK(by_evals[0].pct[4] == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(compute_gap_series({fast}, 0.0, 10.0, 0), ValidationError);
}

TEST_CASE("cli subcommands and exit codes") {
    std::string dir = "cli_test_tmp";
    testing::shell(("rm -rf " + dir));
    std::string graph = write_star4_file(dir);

    CHECK(run_cli("solve --graph " + graph + " --method nads --budget 2 --start sd --gamma 0" +
                  " --out " + dir + "/solve_out") == 0);
    CHECK(read_lines(dir + "/solve_out/trace_nads_2_sd.csv").size() == 3);
    CHECK(run_cli("heuristic --graph " + graph + " --method sd --budget 2 --gamma 0") == 0);
    CHECK(run_cli("verify --graph " + graph + " --seeds 1,2 --d 2 --gamma 0") == 0);
    CHECK(run_cli("solve --graph " + graph +
                  " --method cds --budget 2 --start random:7 --gamma 0") == 0);

    // exit codes: 2 validation, 3 I/O, 4 infeasible
    CHECK(run_cli("solve --graph " + graph + " --method bogus --budget 2") == 2);
    CHECK(run_cli("solve --graph missing_file.txt --method nads --budget 2") == 3);
    CHECK(run_cli("solve --graph " + graph +
                  " --method nads --budget 2 --weights uniform:0.6") == 4);
    CHECK(run_cli("definitely-not-a-subcommand") == 2);

    // run + gaps end to end
    {
        std::ofstream cfg(dir + "/exp.ini");
        cfg << "graph_path = " << graph << "\n"
            << "dataset = star4\n"
            << "gamma = 0.0\n"
            << "budgets = 2\n"
            << "methods = nads,cds,sd\n"
            << "starts = sd\n"
            << "eval_budget = 100\n"
            << "output_dir = " << dir << "/out\n";
    }
    CHECK(run_cli("run --config " + dir + "/exp.ini") == 0);
    CHECK(read_lines(dir + "/out/summary.csv").size() >= 4);
    CHECK(run_cli("gaps --traces " + dir + "/out --out " + dir + "/gaps2") == 0);
    CHECK(read_lines(dir + "/gaps2/gaps_2.csv").size() >= 2);

    testing::shell(("rm -rf " + dir));
}
