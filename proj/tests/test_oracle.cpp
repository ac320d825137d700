#include <random>

#include "doctest.h"
#include "nads/errors.hpp"
#include "nads/heuristics.hpp"
#include "nads/oracle.hpp"
#include "nads/search.hpp"
#include "test_util.hpp"

using namespace nads;
using nads::testing::fixture_params;

TEST_CASE("dense propagation fixtures") {
    GipParams p = fixture_params();
    CHECK(dense_propagate(testing::star4(), p, SeedSet::of({1, 2}, 2)) ==
          doctest::Approx(0.2).epsilon(1e-12));
    CHECK(dense_propagate(testing::star4(), p, SeedSet::of({}, 0)) == 0.0);
    CHECK(dense_propagate(testing::barbell9(), p, SeedSet::of({0, 1}, 2)) ==
          doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("brute force optima") {
    GipParams p = fixture_params();
    OracleReport star = brute_force_optimum(testing::star4(), p, 2);
    CHECK(star.optimum.nodes == std::vector<int>{1, 2});
    CHECK(star.optimum_score == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(star.evaluated == 6);

    OracleReport barbell = brute_force_optimum(testing::barbell9(), p, 2);
    CHECK(barbell.optimum.nodes == std::vector<int>{0, 1});
    CHECK(barbell.optimum_score == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(barbell.evaluated == 36);

    OracleReport full = brute_force_optimum(testing::star4(), p, 4);
    CHECK(full.evaluated == 1);
    CHECK(full.optimum.nodes == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("local maximum verification") {
    GipParams p = fixture_params();
    OracleReport ok = verify_local_maximum(testing::star4(), p, SeedSet::of({1, 2}, 2), 2);
    CHECK(ok.witnesses.empty());

    // Seeds {3,5} share neighbor 4, score 0.2, and 0.2 is the global optimum,
    // so the certificate holds at d=2 and d=4.
    OracleReport mid2 = verify_local_maximum(testing::barbell9(), p, SeedSet::of({3, 5}, 2), 2);
    CHECK(mid2.optimum_score == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(mid2.witnesses.empty());
    CHECK(mid2.evaluated == 14);
    OracleReport mid4 = verify_local_maximum(testing::barbell9(), p, SeedSet::of({3, 5}, 2), 4);
    CHECK(mid4.witnesses.empty());

    // Twin stars: the two centers are a strict 2-local maximum that a 2-swap
    // escapes.
    WeightedGraph twins = testing::twin_stars();
    OracleReport centers2 = verify_local_maximum(twins, p, SeedSet::of({0, 3}, 2), 2);
    CHECK(centers2.optimum_score == 0.0);
    CHECK(centers2.witnesses.empty());
    OracleReport centers4 = verify_local_maximum(twins, p, SeedSet::of({0, 3}, 2), 4);
    REQUIRE_FALSE(centers4.witnesses.empty());
    CHECK(centers4.witnesses.front().first.nodes == std::vector<int>{1, 2});
    CHECK(centers4.witnesses.front().second == doctest::Approx(0.2).epsilon(1e-12));

    OracleReport twins_opt = brute_force_optimum(twins, p, 2);
    CHECK(twins_opt.optimum.nodes == std::vector<int>{1, 2});
    CHECK(twins_opt.optimum_score == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("oracle guards") {
    GipParams p = fixture_params();
    WeightedGraph big = generate_synthetic(SyntheticKind::Path, {10002, 0}, 0);
    CHECK_THROWS_AS(dense_propagate(big, p, SeedSet::of({0}, 1)), SizeError);
    WeightedGraph p50 = generate_synthetic(SyntheticKind::Path, {50, 0}, 0);
    CHECK_THROWS_AS(brute_force_optimum(p50, p, 10), SizeError);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(verify_local_maximum(p50, p, testing::random_subset(rng, 50, 25), 50),
                    SizeError);
    CHECK_THROWS_AS(verify_local_maximum(p50, p, SeedSet::of({0, 1}, 2), 3), ValidationError);
}

TEST_CASE("parallel enumeration matches serial") {
    GipParams p = fixture_params();
    p.gamma = 0.1;
    WeightedGraph g = generate_synthetic(SyntheticKind::RandomAttachment, {18, 2}, 5);
    OracleReport serial = brute_force_optimum(g, p, 3, 0);
    OracleReport parallel = brute_force_optimum(g, p, 3, 2);
    CHECK(serial.optimum == parallel.optimum);
    CHECK(serial.optimum_score == parallel.optimum_score);
    CHECK(serial.evaluated == parallel.evaluated);
}

TEST_CASE("brute force dominates heuristics and search") {
    std::mt19937_64 rng(99);
    GipParams p = fixture_params();
    for (int it = 0; it < 10; ++it) {
        WeightedGraph g = testing::random_graph(rng, 14, WeightScheme::uniform(0.1));
        int B = 2;
        OracleReport best = brute_force_optimum(g, p, B);
        SearchConfig cfg;
        SeedSet sd = single_discount(g, B).selected;
        CHECK(run_nads(g, p, cfg, sd).score <= best.optimum_score);
        CHECK(run_cds(g, p, cfg, sd).score <= best.optimum_score);
        EvalCache cache;
        CHECK(objective(g, p, sd, cache) <= best.optimum_score);
    }
}
