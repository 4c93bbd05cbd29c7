#include "chaincal/annealer.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "chaincal/rng.hpp"
#include "chaincal/threads.hpp"

namespace chaincal {

void Schedule::validate() const {
    if (!(beta_start > 0.0)) throw std::invalid_argument("beta_start must be > 0");
    if (!(beta_end >= beta_start))
        throw std::invalid_argument("beta_end must be >= beta_start");
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
}

double Schedule::beta_at(int sweep) const {
    if (sweeps == 1) return beta_start;
    const double t = static_cast<double>(sweep) / (sweeps - 1);
    if (kind == ScheduleKind::geometric)
        return beta_start * std::pow(beta_end / beta_start, t);
    return beta_start + t * (beta_end - beta_start);
}

void SAConfig::validate() const {
    schedule.validate();
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
}

Annealer::Annealer(const ProblemGraph& graph) : graph_(graph) {
    graph_.validate();
    const int n = graph_.num_qubits;
    std::vector<int> degree(n, 0);
    for (const Edge& e : graph_.edges) {
        ++degree[e.a];
        ++degree[e.b];
    }
    offset_.assign(n + 1, 0);
    for (int q = 0; q < n; ++q) offset_[q + 1] = offset_[q] + degree[q];
    neighbor_.resize(offset_.back());
    coupling_.resize(offset_.back());
    std::vector<int> cursor(offset_.begin(), offset_.end() - 1);
    for (const Edge& e : graph_.edges) {
        neighbor_[cursor[e.a]] = e.b;
        coupling_[cursor[e.a]++] = e.coupling;
        neighbor_[cursor[e.b]] = e.a;
        coupling_[cursor[e.b]++] = e.coupling;
    }
}

ShotResult Annealer::run_shot(const Schedule& schedule, std::uint64_t seed) const {
    schedule.validate();
    const int n = graph_.num_qubits;
    Rng rng(seed);

    std::vector<double> spin(n);
    for (int q = 0; q < n; ++q) spin[q] = rng.next_spin();

    // Flip costs are kept incrementally: delta[q] is the energy change of
    // flipping q in the current state. Accepting a flip negates delta[q]
    // and shifts each neighbor's cost by the sign change across the bond.
    std::vector<double> delta(n);
    for (int q = 0; q < n; ++q) {
        double local = 0.0;
        for (int k = offset_[q]; k < offset_[q + 1]; ++k)
            local += coupling_[k] * spin[neighbor_[k]];
        delta[q] = 2.0 * spin[q] * local;
    }

    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
        const double beta = schedule.beta_at(sweep);
        // Flips with exp(-beta dE) below the rng resolution can never be
        // accepted; skip the exp for those.
        const double threshold = 44.3614195558365 / beta;
        for (int q = 0; q < n; ++q) {
            const double cost = delta[q];
            if (cost > 0.0 &&
                (cost >= threshold || rng.next_double() >= std::exp(-beta * cost)))
                continue;
            const double old_spin = spin[q];
            spin[q] = -old_spin;
            delta[q] = -cost;
            for (int k = offset_[q]; k < offset_[q + 1]; ++k)
                delta[neighbor_[k]] -= 4.0 * coupling_[k] * old_spin * spin[neighbor_[k]];
        }
    }

    ShotResult result;
    result.config.resize(n);
    for (int q = 0; q < n; ++q) result.config[q] = spin[q] > 0 ? 1 : -1;
    result.energy = energy(graph_, result.config);
    return result;
}

ShotResult run_shot(const ProblemGraph& graph, const Schedule& schedule, std::uint64_t seed) {
    return Annealer(graph).run_shot(schedule, seed);
}

namespace {

/// Runs `shots` seeded shots in parallel and hands each result, in shot
/// order, to `consume` on the calling thread.
template <typename Outcome, typename PerShot, typename Consume>
void run_batch(long long shots, int threads, const PerShot& per_shot, const Consume& consume) {
    const int workers = worker_count(threads);
    std::vector<Outcome> outcomes(static_cast<std::size_t>(shots));
    const auto ranges = split_range(static_cast<std::uint64_t>(shots), workers);
    std::vector<std::thread> pool;
    for (std::size_t r = 1; r < ranges.size(); ++r)
        pool.emplace_back([&, r] {
            for (std::uint64_t i = ranges[r].first; i < ranges[r].second; ++i)
                outcomes[i] = per_shot(static_cast<long long>(i));
        });
    if (!ranges.empty())
        for (std::uint64_t i = ranges[0].first; i < ranges[0].second; ++i)
            outcomes[i] = per_shot(static_cast<long long>(i));
    for (auto& t : pool) t.join();
    for (long long i = 0; i < shots; ++i) consume(i, outcomes[i]);
}

}  // namespace

PEstimate estimate_p(const EmbeddedProblem& embedded, double reference_eg_total,
                     const SAConfig& cfg, const ShotSink& sink) {
    cfg.validate();
    const Annealer annealer(embedded.composite);

    struct Outcome {
        double energy = 0.0;
        int broken = 0;
        bool hit = false;
    };

    auto per_shot = [&](long long i) {
        const ShotResult shot =
            annealer.run_shot(cfg.schedule, derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i)));
        Outcome out;
        out.energy = shot.energy;
        if (cfg.policy == SuccessPolicy::strict_intact) {
            const DecodeResult decoded = decode(shot.config, embedded, DecodePolicy::strict);
            out.broken = decoded.broken_chains;
            out.hit = decoded.broken_chains == 0 &&
                      std::abs(energy(embedded.base, decoded.lattice_config) -
                               reference_eg_total) <= 1e-9;
        } else {
            const DecodeResult decoded = decode(shot.config, embedded, DecodePolicy::majority);
            out.broken = decoded.broken_chains;
            out.hit = std::abs(energy(embedded.base, decoded.lattice_config) -
                               reference_eg_total) <= 1e-9;
        }
        return out;
    };

    PEstimate estimate;
    estimate.shots = cfg.shots;
    run_batch<Outcome>(cfg.shots, cfg.threads, per_shot, [&](long long i, const Outcome& out) {
        if (out.hit) ++estimate.hits;
        if (sink) sink({i, out.energy, out.broken, out.hit});
    });
    estimate.p = static_cast<double>(estimate.hits) / static_cast<double>(estimate.shots);
    std::tie(estimate.wilson_lo, estimate.wilson_hi) = wilson_interval(estimate.hits, estimate.shots);
    return estimate;
}

ReferenceGround reference_ground(const ProblemGraph& graph, const SAConfig& budget) {
    budget.validate();
    const Annealer annealer(graph);

    auto per_shot = [&](long long i) {
        return annealer.run_shot(budget.schedule,
                                 derive_seed(budget.master_seed, static_cast<std::uint64_t>(i)))
            .energy;
    };

    std::vector<double> energies;
    energies.reserve(static_cast<std::size_t>(budget.shots));
    run_batch<double>(budget.shots, budget.threads, per_shot,
                      [&](long long, double e) { energies.push_back(e); });

    ReferenceGround ref;
    ref.shots = budget.shots;
    ref.energy = energies.front();
    for (double e : energies) ref.energy = std::min(ref.energy, e);
    for (double e : energies)
        if (e <= ref.energy + 1e-9) ++ref.attained;
    return ref;
}

std::pair<double, double> wilson_interval(long long hits, long long shots) {
    if (shots <= 0) throw std::invalid_argument("wilson_interval needs shots >= 1");
    const double z = 1.959963984540054;  // 97.5th normal percentile
    const double n = static_cast<double>(shots);
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    // exact interval ends at the boundaries, where center and half only
    // agree up to rounding
    const double lo = (hits == 0) ? 0.0 : std::max(0.0, center - half);
    const double hi = (hits == shots) ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

}  // namespace chaincal
