#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "chaincal/embedding.hpp"
#include "chaincal/model.hpp"

namespace chaincal {

enum class ScheduleKind { geometric, linear };

/// Inverse-temperature schedule. One sweep is one attempted flip per qubit;
/// beta advances from beta_start to beta_end across the sweeps, multiplied
/// by a constant factor (geometric) or incremented by a constant (linear).
struct Schedule {
    ScheduleKind kind = ScheduleKind::geometric;
    double beta_start = 0.1;
    double beta_end = 10.0;
    int sweeps = 1000;

    void validate() const;
    double beta_at(int sweep) const;
};

enum class SuccessPolicy { strict_intact, energy_only };

struct SAConfig {
    Schedule schedule;
    long long shots = 2000;
    std::uint64_t master_seed = 0;
    SuccessPolicy policy = SuccessPolicy::strict_intact;
    int threads = 0;  // 0 = auto

    void validate() const;
};

struct ShotResult {
    SpinConfig config;
    double energy = 0.0;  // recomputed from scratch on the final configuration
};

/// Metropolis simulated annealing over a fixed graph. The adjacency is
/// compiled once; run_shot is const and reentrant, so one Annealer serves
/// any number of concurrent shots.
class Annealer {
public:
    explicit Annealer(const ProblemGraph& graph);

    /// One seeded shot: uniformly random start, `sweeps` Metropolis sweeps
    /// in fixed site order, accept if dE <= 0 else with prob exp(-beta dE).
    /// Identical (graph, schedule, seed) give bit-identical results.
    ShotResult run_shot(const Schedule& schedule, std::uint64_t seed) const;

    const ProblemGraph& graph() const { return graph_; }

private:
    ProblemGraph graph_;
    std::vector<int> offset_;
    std::vector<int> neighbor_;
    std::vector<double> coupling_;
};

ShotResult run_shot(const ProblemGraph& graph, const Schedule& schedule, std::uint64_t seed);

struct PEstimate {
    double p = 0.0;
    long long hits = 0;
    long long shots = 0;
    double wilson_lo = 0.0;  // 95% Wilson interval
    double wilson_hi = 0.0;
};

struct ShotRecord {
    long long index = 0;
    double energy = 0.0;
    int broken_chains = 0;
    bool hit = false;
};

using ShotSink = std::function<void(const ShotRecord&)>;

/// Ground-hit probability over cfg.shots independent shots on the
/// composite graph. Shot i is seeded from (master_seed, i), so the result
/// is independent of thread count and execution order.
///
/// strict_intact: a hit needs every chain unanimous and the decoded lattice
/// energy equal to reference_eg_total (within 1e-9). energy_only: the
/// majority-decoded lattice energy must match, broken chains allowed.
/// `sink`, when set, receives one record per shot in index order.
PEstimate estimate_p(const EmbeddedProblem& embedded, double reference_eg_total,
                     const SAConfig& cfg, const ShotSink& sink = {});

struct ReferenceGround {
    double energy = 0.0;
    long long attained = 0;  // shots that reached `energy` (within 1e-9)
    long long shots = 0;
    /// A minimum seen by a single shot is suspect.
    bool stable() const { return attained >= 2; }
};

/// Best energy over a long-schedule shot budget; the stand-in ground-state
/// oracle for instances too large to enumerate.
ReferenceGround reference_ground(const ProblemGraph& graph, const SAConfig& budget);

/// 95% Wilson score interval for hits/shots.
std::pair<double, double> wilson_interval(long long hits, long long shots);

}  // namespace chaincal
