#include <doctest.h>

#include <cmath>

#include "chaincal/annealer.hpp"
#include "chaincal/exact.hpp"
#include "oracles.hpp"

using namespace chaincal;

namespace {

ProblemGraph single_fm_edge() {
    ProblemGraph g;
    g.num_qubits = 2;
    g.edges.push_back({0, 1, 1.0});
    return g;
}

Schedule quick_schedule(int sweeps = 100, double beta_end = 10.0) {
    Schedule s;
    s.kind = ScheduleKind::geometric;
    s.beta_start = 0.1;
    s.beta_end = beta_end;
    s.sweeps = sweeps;
    return s;
}

}  // namespace

TEST_CASE("schedule validation and endpoints") {
    Schedule s = quick_schedule(5);
    s.validate();
    CHECK(s.beta_at(0) == doctest::Approx(0.1));
    CHECK(s.beta_at(4) == doctest::Approx(10.0));
    for (int t = 1; t < 5; ++t) CHECK(s.beta_at(t) > s.beta_at(t - 1));

    s.kind = ScheduleKind::linear;
    CHECK(s.beta_at(2) == doctest::Approx(0.5 * (0.1 + 10.0)));

    s.beta_start = -1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = quick_schedule();
    s.sweeps = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = quick_schedule();
    s.beta_end = 0.01;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("run_shot is deterministic in (graph, schedule, seed)") {
    Rng rng(5);
    const ProblemGraph g = testing::random_graph(rng, 6, 12);
    const Schedule schedule = quick_schedule(50);
    const ShotResult a = run_shot(g, schedule, 987654321);
    const ShotResult b = run_shot(g, schedule, 987654321);
    CHECK(a.config == b.config);
    CHECK(a.energy == b.energy);
}

TEST_CASE("run_shot energy equals a from-scratch recomputation") {
    Rng rng(6);
    for (int trial = 0; trial < 25; ++trial) {
        const ProblemGraph g = testing::random_graph(rng, 4, 12);
        const ShotResult shot = run_shot(g, quick_schedule(30), 1000 + trial);
        CHECK(shot.energy == energy(g, shot.config));
    }
}

TEST_CASE("run_shot on a zero-edge graph returns energy zero") {
    ProblemGraph g;
    g.num_qubits = 5;
    const ShotResult shot = run_shot(g, quick_schedule(10), 3);
    CHECK(shot.energy == 0.0);
    CHECK(shot.config.size() == 5);
}

TEST_CASE("a single ferromagnetic edge anneals to its ground state") {
    const Annealer annealer(single_fm_edge());
    const Schedule schedule = quick_schedule(100);
    int hits = 0;
    for (int seed = 0; seed < 1000; ++seed)
        if (annealer.run_shot(schedule, seed).energy == -1.0) ++hits;
    CHECK(hits >= 990);
}

TEST_CASE("fixed-beta sampling matches the Boltzmann weight on one edge") {
    // At constant beta the chain equilibrates to
    // P(aligned)/P(anti) = exp(2 beta).
    const double beta = 0.5;
    Schedule fixed;
    fixed.kind = ScheduleKind::linear;
    fixed.beta_start = beta;
    fixed.beta_end = beta;
    fixed.sweeps = 60;

    const Annealer annealer(single_fm_edge());
    const int shots = 4000;
    int aligned = 0;
    for (int seed = 0; seed < shots; ++seed)
        if (annealer.run_shot(fixed, 50000 + seed).energy < 0.0) ++aligned;

    const double expected = std::exp(2.0 * beta) / (1.0 + std::exp(2.0 * beta));
    const double sigma = std::sqrt(expected * (1.0 - expected) / shots);
    CHECK(std::abs(static_cast<double>(aligned) / shots - expected) < 3.0 * sigma);
}

TEST_CASE("estimate_p is invariant to the thread count") {
    const ProblemGraph base = build_j1j2_lattice({3, 1.0, 0.46, Boundary::periodic});
    const ChainSet chains = sample_chains(3, 3, 17);
    const EmbeddedProblem embedded = embed(base, chains, 2.0);
    const double reference = ground_and_gap(base).e0;

    SAConfig cfg;
    cfg.schedule = quick_schedule(200);
    cfg.shots = 300;
    cfg.master_seed = 99;

    cfg.threads = 1;
    const PEstimate serial = estimate_p(embedded, reference, cfg);
    for (int threads : {2, 3, 7}) {
        cfg.threads = threads;
        const PEstimate parallel = estimate_p(embedded, reference, cfg);
        CHECK(parallel.hits == serial.hits);
        CHECK(parallel.p == serial.p);
    }
}

TEST_CASE("estimate_p finds a trivially solvable instance almost always") {
    // Strongly coupled 2x2 ferromagnet with one short chain.
    const ProblemGraph base = build_j1j2_lattice({2, 1.0, 0.0, Boundary::periodic});
    ChainSet chains;
    chains.chains = {{0, 1}};
    const EmbeddedProblem embedded = embed(base, chains, 2.0);
    const double reference = ground_and_gap(base).e0;

    SAConfig cfg;
    cfg.schedule = quick_schedule(300);
    cfg.shots = 2000;
    cfg.master_seed = 12;
    const PEstimate estimate = estimate_p(embedded, reference, cfg);
    CHECK(estimate.p >= 0.99);
    CHECK(estimate.hits + 0 <= estimate.shots);
    CHECK(estimate.wilson_lo <= estimate.p);
    CHECK(estimate.wilson_hi >= estimate.p);
}

TEST_CASE("estimate_p is zero deep in the broken-chain regime") {
    const ProblemGraph base = build_j1j2_lattice({3, 1.0, 0.46, Boundary::periodic});
    const ChainSet chains = sample_chains_with_total(3, 5, 100, 8);
    // jc_star = 1.84 here; measure at half of it
    const EmbeddedProblem embedded = embed(base, chains, 0.92);
    const double reference = ground_and_gap(base).e0;

    SAConfig cfg;
    cfg.schedule = quick_schedule(1000);
    cfg.shots = 2000;
    cfg.master_seed = 4;
    const PEstimate estimate = estimate_p(embedded, reference, cfg);
    CHECK(estimate.hits == 0);
}

TEST_CASE("shot records stream in index order") {
    const ProblemGraph base = build_j1j2_lattice({2, 1.0, 0.0, Boundary::periodic});
    ChainSet chains;
    chains.chains = {{1, 1}};
    const EmbeddedProblem embedded = embed(base, chains, 1.0);

    SAConfig cfg;
    cfg.schedule = quick_schedule(20);
    cfg.shots = 50;
    cfg.master_seed = 31;
    cfg.threads = 3;

    std::vector<ShotRecord> records;
    estimate_p(embedded, ground_and_gap(base).e0, cfg,
               [&](const ShotRecord& r) { records.push_back(r); });
    REQUIRE(records.size() == 50);
    for (long long i = 0; i < 50; ++i) CHECK(records[i].index == i);
}

TEST_CASE("estimate_p validates its configuration") {
    const ProblemGraph base = build_j1j2_lattice({2, 1.0, 0.0, Boundary::periodic});
    ChainSet chains;
    chains.chains = {{0, 1}};
    const EmbeddedProblem embedded = embed(base, chains, 1.0);
    SAConfig cfg;
    cfg.shots = 0;
    CHECK_THROWS_AS(estimate_p(embedded, -8.0, cfg), std::invalid_argument);
}

TEST_CASE("reference_ground matches exact enumeration on small graphs") {
    Rng rng(2024);
    SAConfig budget;
    budget.schedule = quick_schedule(400, 12.0);
    budget.shots = 96;
    for (int trial = 0; trial < 20; ++trial) {
        const ProblemGraph g = testing::random_graph(rng, 4, 12);
        budget.master_seed = 7000 + trial;
        const ReferenceGround ref = reference_ground(g, budget);
        const GapReport exact = ground_and_gap(g);
        CHECK(ref.energy == doctest::Approx(exact.e0).epsilon(1e-12));
        CHECK(ref.shots == 96);
        CHECK(ref.attained >= 1);
    }
}

TEST_CASE("wilson interval brackets the estimate") {
    for (long long shots : {1, 10, 100, 2000}) {
        for (long long hits : {0ll, shots / 2, shots}) {
            const auto [lo, hi] = wilson_interval(hits, shots);
            const double p = static_cast<double>(hits) / shots;
            CHECK(lo >= 0.0);
            CHECK(hi <= 1.0);
            CHECK(lo <= p + 1e-12);
            CHECK(hi >= p - 1e-12);
        }
    }
    CHECK(wilson_interval(0, 100).first == 0.0);
    CHECK(wilson_interval(100, 100).second == 1.0);
    CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
}
