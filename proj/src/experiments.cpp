#include "chaincal/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chaincal/rng.hpp"

namespace chaincal {

namespace {

// Seed-stream tags, one per derived purpose.
enum Stream : std::uint64_t {
    kChains = 1,
    kSa = 2,
    kDisorder = 3,
    kOracle = 4,
    kKinkChains = 5,
};

ChainSet draw_chains(const ChainPolicy& policy, int lattice_length, std::uint64_t seed) {
    switch (policy.mode) {
        case ChainPolicy::Mode::fixed: return policy.fixed;
        case ChainPolicy::Mode::target_total:
            return sample_chains_with_total(lattice_length, policy.target_total,
                                            policy.max_tries, seed);
        case ChainPolicy::Mode::random: {
            Rng rng(derive_seed(seed, 0x7e1));
            const int sites = lattice_length * lattice_length;
            const int num_chains =
                1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(sites)));
            return sample_chains(lattice_length, num_chains, derive_seed(seed, 0x7e2));
        }
    }
    throw std::logic_error("unreachable chain policy");
}

PEstimate pool_estimates(const std::vector<PEstimate>& parts) {
    PEstimate pooled;
    for (const PEstimate& part : parts) {
        pooled.hits += part.hits;
        pooled.shots += part.shots;
    }
    pooled.p = pooled.shots ? static_cast<double>(pooled.hits) / pooled.shots : 0.0;
    if (pooled.shots)
        std::tie(pooled.wilson_lo, pooled.wilson_hi) =
            wilson_interval(pooled.hits, pooled.shots);
    return pooled;
}

}  // namespace

void ExperimentPlan::validate() const {
    lattice.validate();
    sa.validate();
    if (grid.empty()) throw std::invalid_argument("plan grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("plan grid must be strictly increasing");
    if (ensembles < 1) throw std::invalid_argument("ensembles must be >= 1");
    if (kind == PlanKind::disorder_study) {
        oracle.validate();
        disorder.validate();
        if (x_grid.empty()) throw std::invalid_argument("disorder study needs x values");
    }
}

std::vector<GapSweepRow> run_exact_gap_sweep(const ExperimentPlan& plan) {
    plan.validate();
    ChainPolicy policy = plan.chains;
    if (policy.mode != ChainPolicy::Mode::fixed) {
        // One chain set shared by every grid value keeps the curves comparable.
        policy.fixed = draw_chains(policy, plan.lattice.length, derive_seed(plan.seed, kChains));
        policy.mode = ChainPolicy::Mode::fixed;
    }

    std::vector<GapSweepRow> rows;
    for (double ratio : plan.grid) {
        LatticeSpec spec = plan.lattice;
        spec.j2 = ratio * spec.j1;
        const ProblemGraph base = build_j1j2_lattice(spec);
        GapSweepRow row;
        row.j2_over_j1 = ratio;
        row.chains = policy.fixed;
        row.scan = find_kinks(base, policy.fixed, plan.jc_lo, plan.jc_hi, plan.exact,
                              plan.kink_grid_step * std::abs(spec.j1));
        rows.push_back(std::move(row));
    }
    return rows;
}

JcSweepResult run_sa_jc_sweep(const ExperimentPlan& plan) {
    plan.validate();
    const ProblemGraph base = build_j1j2_lattice(plan.lattice);

    JcSweepResult result;
    if (base.num_qubits <= plan.exact.max_qubits) {
        result.reference_eg_total = ground_and_gap(base, plan.exact).e0;
        result.reference_exact = true;
    } else {
        SAConfig budget = plan.oracle;
        budget.master_seed = derive_seed(plan.seed, kOracle);
        const ReferenceGround oracle = reference_ground(base, budget);
        result.reference_eg_total = oracle.energy;
        result.reference_exact = false;
        result.oracle = oracle;
    }

    for (int m = 0; m < plan.ensembles; ++m)
        result.ensemble_chains.push_back(draw_chains(
            plan.chains, plan.lattice.length,
            derive_seed(plan.seed, kChains, static_cast<std::uint64_t>(m))));

    for (std::size_t gi = 0; gi < plan.grid.size(); ++gi) {
        const double jc = plan.grid[gi];
        JcSweepPoint point;
        point.jc = jc;
        std::vector<PEstimate> parts;
        for (int m = 0; m < plan.ensembles; ++m) {
            const EmbeddedProblem embedded = embed(base, result.ensemble_chains[m], jc);
            SAConfig cfg = plan.sa;
            cfg.master_seed = derive_seed(plan.seed, kSa, gi, static_cast<std::uint64_t>(m));
            parts.push_back(estimate_p(embedded, result.reference_eg_total, cfg));
            point.ensemble_hits.push_back(parts.back().hits);
        }
        point.estimate = pool_estimates(parts);
        result.points.push_back(std::move(point));
    }
    return result;
}

std::vector<J2SweepCell> run_sa_j2_sweep(const ExperimentPlan& plan) {
    plan.validate();

    std::vector<J2SweepCell> cells;
    for (std::size_t gi = 0; gi < plan.grid.size(); ++gi) {
        const double ratio = plan.grid[gi];
        LatticeSpec spec = plan.lattice;
        spec.j2 = ratio * spec.j1;
        const ProblemGraph base = build_j1j2_lattice(spec);
        const double reference = ground_and_gap(base, plan.exact).e0;

        // Gap inversion uses one exact-feasible chain set; the located jc is
        // then applied to the measurement ensembles.
        const ChainSet kink_chains = sample_chains_with_total(
            spec.length, plan.kink_chain_total, plan.chains.max_tries,
            derive_seed(plan.seed, kKinkChains, gi));
        const KinkScan scan =
            find_kinks(base, kink_chains, plan.jc_lo, plan.jc_hi, plan.exact,
                       plan.kink_grid_step * std::abs(spec.j1));
        CompositeGapModel model = analyze_composite(base, kink_chains, plan.exact);

        struct Condition {
            std::string label;
            bool fixed_jc;
            double value;
        };
        std::vector<Condition> conditions;
        for (double jc : plan.fixed_jc)
            conditions.push_back({"jc=" + format_double(jc), true, jc});
        for (double target : plan.fixed_delta_c)
            conditions.push_back({"delta_c=" + format_double(target), false, target});

        for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
            const Condition& cond = conditions[ci];
            J2SweepCell cell;
            cell.j2_over_j1 = ratio;
            cell.condition = cond.label;
            if (cond.fixed_jc) {
                cell.jc_used = cond.value;
            } else if (!scan.found) {
                cell.feasible = false;
                cell.note = scan.diagnosis;
            } else if (!(cond.value > 0.0) || cond.value >= scan.delta_s - 1e-9) {
                cell.feasible = false;
                cell.note = "target gap " + format_double(cond.value) +
                            " is not inside (0, delta_s=" + format_double(scan.delta_s) + ")";
            } else {
                cell.jc_used = solve_jc_for_gap(model, scan.report, cond.value);
            }

            if (cell.feasible) {
                std::vector<PEstimate> parts;
                for (int m = 0; m < plan.ensembles; ++m) {
                    const ChainSet chains = draw_chains(
                        plan.chains, spec.length,
                        derive_seed(plan.seed, kChains, gi, static_cast<std::uint64_t>(m)));
                    SAConfig cfg = plan.sa;
                    cfg.master_seed =
                        derive_seed(plan.seed, kSa, gi * 97 + ci, static_cast<std::uint64_t>(m));
                    parts.push_back(estimate_p(embed(base, chains, cell.jc_used), reference, cfg));
                }
                cell.estimate = pool_estimates(parts);
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

std::vector<DisorderResult> run_disorder_study(const ExperimentPlan& plan) {
    plan.validate();

    std::vector<DisorderResult> results;
    for (std::size_t xi = 0; xi < plan.x_grid.size(); ++xi) {
        DisorderResult result;
        result.x = plan.x_grid[xi];
        result.hits_by_jc.reserve(plan.grid.size());
        for (double jc : plan.grid) result.hits_by_jc.emplace_back(jc, 0);

        LatticeSpec spec = plan.lattice;
        spec.j2 = plan.disorder.j2_low * std::abs(spec.j1);  // rewritten bond by bond below

        double eg_sum = 0.0;
        for (int r = 0; r < plan.ensembles; ++r) {
            DisorderRealization realization;
            DisorderSpec disorder = plan.disorder;
            disorder.x = result.x;
            disorder.seed = derive_seed(plan.seed, kDisorder, xi, static_cast<std::uint64_t>(r));
            realization.disorder_seed = disorder.seed;

            const ProblemGraph graph =
                apply_diagonal_disorder(build_j1j2_lattice(spec), disorder);

            SAConfig budget = plan.oracle;
            budget.master_seed = derive_seed(plan.seed, kOracle, xi, static_cast<std::uint64_t>(r));
            const ReferenceGround oracle = reference_ground(graph, budget);
            realization.eg_per_site = oracle.energy / graph.num_qubits;
            realization.oracle_attained = oracle.attained;
            if (!oracle.stable()) result.oracle_stable = false;
            eg_sum += realization.eg_per_site;

            realization.chains = draw_chains(
                plan.chains, spec.length,
                derive_seed(plan.seed, kChains, xi, static_cast<std::uint64_t>(r)));

            for (std::size_t gi = 0; gi < plan.grid.size(); ++gi) {
                const double jc = plan.grid[gi];
                SAConfig cfg = plan.sa;
                cfg.master_seed = derive_seed(plan.seed, kSa, xi * 1000 + gi,
                                              static_cast<std::uint64_t>(r));
                const PEstimate estimate =
                    estimate_p(embed(graph, realization.chains, jc), oracle.energy, cfg);
                result.hits_by_jc[gi].second += estimate.hits;
            }
            result.realizations.push_back(std::move(realization));
        }
        result.mean_eg = eg_sum / plan.ensembles;

        std::size_t best = 0;
        for (std::size_t gi = 1; gi < result.hits_by_jc.size(); ++gi)
            if (result.hits_by_jc[gi].second > result.hits_by_jc[best].second) best = gi;
        result.best_jc = result.hits_by_jc[best].first;
        results.push_back(std::move(result));
    }
    return results;
}

double suggest_jc_ordered(const ProblemGraph& base, const ChainSet& chains, double jc_lo,
                          double jc_hi, const EnumOptions& opts) {
    const KinkScan scan = find_kinks(base, chains, jc_lo, jc_hi, opts);
    if (!scan.found)
        throw std::invalid_argument("no usable gap structure for the ordered rule: " +
                                    scan.diagnosis);
    const CompositeGapModel model = analyze_composite(base, chains, opts);
    return solve_jc_for_gap(model, scan.report, 0.25 * scan.delta_s);
}

double suggest_jc_disordered(double eg_per_site, double j1) {
    return 2.1 * std::abs(eg_per_site) * std::abs(j1);
}

}  // namespace chaincal
