#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaincal/annealer.hpp"
#include "chaincal/embedding.hpp"
#include "chaincal/exact.hpp"
#include "chaincal/io.hpp"
#include "chaincal/model.hpp"
#include "chaincal/toml.hpp"

namespace chaincal {

enum class PlanKind { exact_gap_sweep, sa_jc_sweep, sa_j2_sweep, disorder_study };

/// How chain sets are drawn for a sweep.
struct ChainPolicy {
    enum class Mode {
        fixed,         // one explicit chain set for every cell
        target_total,  // fresh draw per ensemble member, conditioned on N_c
        random         // fresh unconditioned draw per ensemble member
    };
    Mode mode = Mode::target_total;
    ChainSet fixed;
    int target_total = 18;
    int max_tries = 1000;
};

/// Declarative sweep description; one plan drives one run. Identical plans
/// (seed included) produce byte-identical result tables.
struct ExperimentPlan {
    PlanKind kind = PlanKind::sa_jc_sweep;
    LatticeSpec lattice;
    ChainPolicy chains;
    std::vector<double> grid;  // axis: jc, j2/j1, or (disorder) jc again
    int ensembles = 1;
    SAConfig sa;
    std::uint64_t seed = 0;

    // exact analysis knobs
    double jc_lo = 1.0;
    double jc_hi = 3.5;
    double kink_grid_step = 0.01;
    EnumOptions exact;

    // sa_j2_sweep conditions
    std::vector<double> fixed_jc = {2.0};
    std::vector<double> fixed_delta_c = {0.4, 1.0};
    int kink_chain_total = 9;  // exact-feasible chain set used for gap inversion

    // disorder_study
    std::vector<double> x_grid = {0.2, 0.4, 0.5};
    DisorderSpec disorder;
    SAConfig oracle;  // reference-ground budget (long schedule, many shots)

    void validate() const;
};

/// Parses a plan from the TOML subset; see the README for the file layout.
ExperimentPlan plan_from_toml(const TomlTable& table);
ExperimentPlan load_plan(const std::string& path);

/// Full resolved echo of the plan, stored in run manifests.
Json to_json(const ExperimentPlan& plan);

// --- exact gap sweep ------------------------------------------------------

struct GapSweepRow {
    double j2_over_j1 = 0.0;
    KinkScan scan;
    ChainSet chains;
};

/// One kink analysis per j2/j1 grid value, all with the same chain set
/// (drawn once from the plan seed unless the policy pins one).
std::vector<GapSweepRow> run_exact_gap_sweep(const ExperimentPlan& plan);

// --- SA sweep over jc -------------------------------------------------------

struct JcSweepPoint {
    double jc = 0.0;
    PEstimate estimate;                    // pooled over ensemble members
    std::vector<long long> ensemble_hits;  // provenance, one entry per member
};

struct JcSweepResult {
    std::vector<JcSweepPoint> points;
    std::vector<ChainSet> ensemble_chains;
    double reference_eg_total = 0.0;  // chainless ground energy of the lattice
    bool reference_exact = true;
    std::optional<ReferenceGround> oracle;  // set when SA provided the reference
};

JcSweepResult run_sa_jc_sweep(const ExperimentPlan& plan);

// --- SA sweep over j2/j1 ---------------------------------------------------

struct J2SweepCell {
    double j2_over_j1 = 0.0;
    std::string condition;  // "jc=2" or "delta_c=0.4"
    bool feasible = true;
    std::string note;  // why the cell is infeasible, when it is
    double jc_used = 0.0;
    PEstimate estimate;
};

std::vector<J2SweepCell> run_sa_j2_sweep(const ExperimentPlan& plan);

// --- disorder study ---------------------------------------------------------

struct DisorderRealization {
    std::uint64_t disorder_seed = 0;
    double eg_per_site = 0.0;
    long long oracle_attained = 0;
    ChainSet chains;
};

struct DisorderResult {
    double x = 0.0;
    double mean_eg = 0.0;  // per site, averaged over realizations
    std::vector<std::pair<double, long long>> hits_by_jc;  // raw counts N
    double best_jc = 0.0;  // grid argmax of N (first maximum)
    bool oracle_stable = true;
    std::vector<DisorderRealization> realizations;
};

std::vector<DisorderResult> run_disorder_study(const ExperimentPlan& plan);

// --- recommendations --------------------------------------------------------

/// Chain strength whose composite gap is one quarter of the chainless gap.
/// Throws std::invalid_argument when the instance has no usable two-kink
/// structure (fully frustrated lattices).
double suggest_jc_ordered(const ProblemGraph& base, const ChainSet& chains, double jc_lo,
                          double jc_hi, const EnumOptions& opts = {});

/// Disordered-instance rule: 2.1 |eg_per_site| |j1|; zero input gives zero.
double suggest_jc_disordered(double eg_per_site, double j1 = 1.0);

}  // namespace chaincal
