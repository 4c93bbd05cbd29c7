#include "chaincal/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <thread>

#include "chaincal/threads.hpp"

namespace chaincal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulated Gray-walk energies drift from the canonical value by at most
// a few ulps per step; anything within this margin of a kept level is
// recomputed exactly before the tracker is touched.
constexpr double kDriftMargin = 1e-6;

struct Adjacency {
    std::vector<int> offset;
    std::vector<int> neighbor;
    std::vector<double> coupling;

    explicit Adjacency(int num_qubits, const std::vector<Edge>& edges) {
        std::vector<int> degree(num_qubits, 0);
        for (const Edge& e : edges) {
            ++degree[e.a];
            ++degree[e.b];
        }
        offset.assign(num_qubits + 1, 0);
        for (int q = 0; q < num_qubits; ++q) offset[q + 1] = offset[q] + degree[q];
        neighbor.resize(offset.back());
        coupling.resize(offset.back());
        std::vector<int> cursor(offset.begin(), offset.end() - 1);
        for (const Edge& e : edges) {
            neighbor[cursor[e.a]] = e.b;
            coupling[cursor[e.a]++] = e.coupling;
            neighbor[cursor[e.b]] = e.a;
            coupling[cursor[e.b]++] = e.coupling;
        }
    }
};

/// Lowest distinct energy levels with degeneracies. Inserted values must be
/// canonical (recomputed in fixed edge order) so that merges and reports do
/// not depend on the walk path or the partition count.
struct LevelTracker {
    static constexpr int kKeep = 3;

    double tol;
    double cutoff = kInf;  // fast-path rejection threshold for accumulated values
    int size = 0;
    double level[kKeep] = {0.0, 0.0, 0.0};
    long long count[kKeep] = {0, 0, 0};

    explicit LevelTracker(double tolerance) : tol(tolerance) {}

    void refresh_cutoff() { cutoff = (size == kKeep) ? level[kKeep - 1] + tol + kDriftMargin : kInf; }

    void insert(double e) {
        for (int k = 0; k < size; ++k) {
            if (e < level[k] - tol) {
                for (int j = std::min(size, kKeep - 1); j > k; --j) {
                    level[j] = level[j - 1];
                    count[j] = count[j - 1];
                }
                level[k] = e;
                count[k] = 1;
                size = std::min(size + 1, kKeep);
                refresh_cutoff();
                return;
            }
            if (e <= level[k] + tol) {
                ++count[k];
                if (e < level[k]) level[k] = e;  // keep the minimum as representative
                return;
            }
        }
        if (size < kKeep) {
            level[size] = e;
            count[size] = 1;
            ++size;
            refresh_cutoff();
        }
    }

    void merge(const LevelTracker& other) {
        std::vector<std::pair<double, long long>> entries;
        for (int k = 0; k < size; ++k) entries.emplace_back(level[k], count[k]);
        for (int k = 0; k < other.size; ++k) entries.emplace_back(other.level[k], other.count[k]);
        std::sort(entries.begin(), entries.end());
        size = 0;
        for (const auto& [e, c] : entries) {
            if (size > 0 && e <= level[size - 1] + tol) {
                count[size - 1] += c;
            } else if (size < kKeep) {
                level[size] = e;
                count[size] = c;
                ++size;
            }
        }
        refresh_cutoff();
    }
};

GapReport report_from(const LevelTracker& t) {
    GapReport r;
    r.e0 = t.level[0];
    r.g0 = t.count[0];
    if (t.size >= 2) {
        r.e1 = t.level[1];
        r.gap = r.e1 - r.e0;
    } else {
        r.e1 = r.e0;
        r.gap = 0.0;
        r.single_level = true;
    }
    return r;
}

std::uint64_t gray(std::uint64_t n) { return n ^ (n >> 1); }

void check_cap(int num_qubits, const EnumOptions& opts, const char* what) {
    if (num_qubits > opts.max_qubits)
        throw CapError(std::string(what) + " has " + std::to_string(num_qubits) +
                       " qubits, above the enumeration cap of " +
                       std::to_string(opts.max_qubits));
    if (num_qubits > 62) throw CapError("state space exceeds 2^62");
}

double canonical_energy(const std::vector<Edge>& edges, std::uint64_t mask) {
    double total = 0.0;
    for (const Edge& e : edges) {
        const double product = (((mask >> e.a) ^ (mask >> e.b)) & 1u) ? -1.0 : 1.0;
        total -= e.coupling * product;
    }
    return total;
}

/// One Gray-code walk over state indices [lo, hi), offering every visited
/// energy to `tracker`. `edges` defines both the incremental updates and
/// the canonical recomputation.
void walk_range(int num_qubits, const Adjacency& adj, const std::vector<Edge>& edges,
                std::uint64_t lo, std::uint64_t hi, LevelTracker& tracker) {
    std::uint64_t mask = gray(lo);
    std::vector<double> spin(num_qubits);
    for (int q = 0; q < num_qubits; ++q) spin[q] = ((mask >> q) & 1u) ? 1.0 : -1.0;
    double e = canonical_energy(edges, mask);
    if (e < tracker.cutoff) tracker.insert(canonical_energy(edges, mask));

    for (std::uint64_t n = lo + 1; n < hi; ++n) {
        const int q = std::countr_zero(n);
        double local = 0.0;
        for (int k = adj.offset[q]; k < adj.offset[q + 1]; ++k)
            local += adj.coupling[k] * spin[adj.neighbor[k]];
        e += 2.0 * spin[q] * local;
        spin[q] = -spin[q];
        mask ^= (std::uint64_t{1} << q);
        if (e < tracker.cutoff) tracker.insert(canonical_energy(edges, mask));
    }
}

}  // namespace

GapReport ground_and_gap(const ProblemGraph& graph, const EnumOptions& opts) {
    graph.validate();
    check_cap(graph.num_qubits, opts, "graph");

    const std::uint64_t total = std::uint64_t{1} << graph.num_qubits;
    const Adjacency adj(graph.num_qubits, graph.edges);

    int workers = worker_count(opts.threads);
    if (total < (std::uint64_t{1} << 16)) workers = 1;
    const auto ranges = split_range(total, workers);

    std::vector<LevelTracker> partial(ranges.size(), LevelTracker(opts.tolerance));
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < ranges.size(); ++i)
        pool.emplace_back([&, i] {
            walk_range(graph.num_qubits, adj, graph.edges, ranges[i].first, ranges[i].second,
                       partial[i]);
        });
    walk_range(graph.num_qubits, adj, graph.edges, ranges[0].first, ranges[0].second, partial[0]);
    for (auto& t : pool) t.join();

    for (std::size_t i = 1; i < partial.size(); ++i) partial[0].merge(partial[i]);
    return report_from(partial[0]);
}

std::vector<std::pair<double, long long>> full_spectrum(const ProblemGraph& graph,
                                                        const EnumOptions& opts) {
    graph.validate();
    if (graph.num_qubits > 20) throw CapError("full_spectrum is capped at 20 qubits");
    check_cap(graph.num_qubits, opts, "graph");

    const std::uint64_t total = std::uint64_t{1} << graph.num_qubits;
    std::vector<double> energies(total);
    for (std::uint64_t mask = 0; mask < total; ++mask)
        energies[mask] = canonical_energy(graph.edges, mask);
    std::sort(energies.begin(), energies.end());

    std::vector<std::pair<double, long long>> levels;
    for (double e : energies) {
        if (levels.empty() || e > levels.back().first + opts.tolerance)
            levels.emplace_back(e, 1);
        else
            ++levels.back().second;
    }
    return levels;
}

CompositeGapModel analyze_composite(const ProblemGraph& base, const ChainSet& chains,
                                    const EnumOptions& opts) {
    const EmbeddedProblem embedded = embed(base, chains, 0.0);
    check_cap(embedded.composite.num_qubits, opts, "composite");

    // Problem bonds only; chain bonds enter through the broken-bond count.
    std::set<std::pair<int, int>> chain_pairs;
    for (const auto& [a, b] : embedded.chain_bonds) chain_pairs.insert(std::minmax(a, b));
    std::vector<Edge> problem_edges;
    for (const Edge& e : embedded.composite.edges)
        if (!chain_pairs.count({e.a, e.b})) problem_edges.push_back(e);

    const int n = embedded.composite.num_qubits;
    const int num_bonds = static_cast<int>(embedded.chain_bonds.size());
    const Adjacency adj(n, problem_edges);

    std::vector<std::vector<int>> chain_adj(n);
    for (const auto& [a, b] : embedded.chain_bonds) {
        chain_adj[a].push_back(b);
        chain_adj[b].push_back(a);
    }

    const std::uint64_t total = std::uint64_t{1} << n;
    int workers = worker_count(opts.threads);
    if (total < (std::uint64_t{1} << 16)) workers = 1;
    const auto ranges = split_range(total, workers);

    using Buckets = std::vector<LevelTracker>;
    auto walk_branches = [&](std::uint64_t lo, std::uint64_t hi, Buckets& buckets) {
        std::uint64_t mask = gray(lo);
        std::vector<double> spin(n);
        for (int q = 0; q < n; ++q) spin[q] = ((mask >> q) & 1u) ? 1.0 : -1.0;
        double e = canonical_energy(problem_edges, mask);
        int broken = 0;
        for (const auto& [a, b] : embedded.chain_bonds)
            broken += (((mask >> a) ^ (mask >> b)) & 1u) ? 1 : 0;
        if (e < buckets[broken].cutoff)
            buckets[broken].insert(canonical_energy(problem_edges, mask));

        for (std::uint64_t idx = lo + 1; idx < hi; ++idx) {
            const int q = std::countr_zero(idx);
            double local = 0.0;
            for (int k = adj.offset[q]; k < adj.offset[q + 1]; ++k)
                local += adj.coupling[k] * spin[adj.neighbor[k]];
            e += 2.0 * spin[q] * local;
            spin[q] = -spin[q];
            mask ^= (std::uint64_t{1} << q);
            for (int r : chain_adj[q])
                broken += (((mask >> q) ^ (mask >> r)) & 1u) ? 1 : -1;
            if (e < buckets[broken].cutoff)
                buckets[broken].insert(canonical_energy(problem_edges, mask));
        }
    };

    std::vector<Buckets> partial(ranges.size(),
                                 Buckets(num_bonds + 1, LevelTracker(opts.tolerance)));
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < ranges.size(); ++i)
        pool.emplace_back([&, i] { walk_branches(ranges[i].first, ranges[i].second, partial[i]); });
    walk_branches(ranges[0].first, ranges[0].second, partial[0]);
    for (auto& t : pool) t.join();

    for (std::size_t i = 1; i < partial.size(); ++i)
        for (int b = 0; b <= num_bonds; ++b) partial[0][b].merge(partial[i][b]);

    const GapReport lattice = ground_and_gap(base, opts);

    CompositeGapModel model;
    model.chain_bonds_ = num_bonds;
    model.tolerance_ = opts.tolerance;
    model.lattice_e0_ = lattice.e0;
    model.lattice_g0_ = lattice.g0;
    model.lattice_gap_ = lattice.gap;
    model.lattice_single_level_ = lattice.single_level;
    model.branches_.resize(num_bonds + 1);
    for (int b = 0; b <= num_bonds; ++b) {
        const LevelTracker& t = partial[0][b];
        for (int k = 0; k < t.size; ++k)
            model.branches_[b].push_back({t.level[k], t.count[k]});
    }
    return model;
}

GapReport CompositeGapModel::gap_report(double jc) const {
    std::vector<std::pair<double, long long>> values;
    for (int b = 0; b < static_cast<int>(branches_.size()); ++b)
        for (const Level& lv : branches_[b])
            values.emplace_back(lv.energy - jc * (chain_bonds_ - 2 * b), lv.count);
    std::sort(values.begin(), values.end());

    LevelTracker merged(tolerance_);
    for (const auto& [e, c] : values) {
        if (merged.size > 0 && e <= merged.level[merged.size - 1] + tolerance_) {
            merged.count[merged.size - 1] += c;
        } else if (merged.size < LevelTracker::kKeep) {
            merged.level[merged.size] = e;
            merged.count[merged.size] = c;
            ++merged.size;
        }
    }
    return report_from(merged);
}

double CompositeGapModel::delta_c(double jc) const {
    const GapReport at = gap_report(jc);
    const double encoded = lattice_e0_ - chain_bonds_ * jc;
    if (at.e0 < encoded - tolerance_) return 0.0;  // broken states undercut the encoding
    if (at.g0 > lattice_g0_) return 0.0;           // broken states degenerate with it
    if (at.single_level) return 0.0;
    return at.gap;
}

std::vector<std::pair<double, double>> delta_c_curve(const ProblemGraph& base,
                                                     const ChainSet& chains,
                                                     const std::vector<double>& jc_grid,
                                                     const EnumOptions& opts) {
    const CompositeGapModel model = analyze_composite(base, chains, opts);
    std::vector<std::pair<double, double>> curve;
    curve.reserve(jc_grid.size());
    for (double jc : jc_grid) curve.emplace_back(jc, model.delta_c(jc));
    return curve;
}

KinkScan find_kinks(const ProblemGraph& base, const ChainSet& chains, double jc_lo,
                    double jc_hi, const EnumOptions& opts, double grid_step) {
    if (!(jc_lo >= 0.0) || !(jc_hi > jc_lo))
        throw std::invalid_argument("kink bracket must satisfy 0 <= jc_lo < jc_hi");
    if (!(grid_step > 0.0)) throw std::invalid_argument("grid step must be positive");

    const CompositeGapModel model = analyze_composite(base, chains, opts);
    const double tol = opts.tolerance;

    KinkScan scan;
    scan.delta_s = model.delta_s();
    scan.gap_lo = model.delta_c(jc_lo);
    scan.gap_hi = model.delta_c(jc_hi);

    std::vector<double> grid;
    for (double jc = jc_lo; jc < jc_hi; jc += grid_step) grid.push_back(jc);
    grid.push_back(jc_hi);
    for (double jc : grid) scan.curve.emplace_back(jc, model.delta_c(jc));

    if (model.delta_s() <= tol) {
        scan.diagnosis = "chainless spectrum has no usable gap (delta_s ~ 0)";
        return scan;
    }
    if (scan.gap_lo > tol) {
        scan.diagnosis = "gap is nonzero at the lower bracket end; the zero-gap region "
                         "lies below jc_lo, widen the bracket downward";
        return scan;
    }
    if (std::abs(scan.gap_hi - scan.delta_s) > 1e-9) {
        scan.diagnosis = "gap has not saturated at the chainless gap by jc_hi; no two-kink "
                         "structure inside the bracket (widen it, or the instance has no "
                         "stable window in this range)";
        return scan;
    }

    auto gap_at = [&model](double jc) { return model.delta_c(jc); };

    // First kink: the edge of the zero-gap region.
    std::size_t rise = 0;
    while (rise < scan.curve.size() && scan.curve[rise].second <= tol) ++rise;
    double a = scan.curve[rise - 1].first;
    double b = scan.curve[rise].first;
    while (b - a > 1e-7) {
        const double mid = 0.5 * (a + b);
        (gap_at(mid) <= tol ? a : b) = mid;
    }
    const double jc_star = a;

    // Second kink: where the gap first reaches the chainless gap.
    std::size_t sat = rise;
    while (sat < scan.curve.size() && scan.curve[sat].second < scan.delta_s - 1e-9) ++sat;
    a = scan.curve[sat - 1].first;
    b = scan.curve[sat].first;
    while (b - a > 1e-7) {
        const double mid = 0.5 * (a + b);
        (gap_at(mid) >= scan.delta_s - 1e-9 ? b : a) = mid;
    }
    const double jc_dstar = b;

    if (!(jc_star < jc_dstar)) {
        scan.diagnosis = "kinks could not be separated inside the bracket";
        return scan;
    }

    scan.found = true;
    scan.report.jc_star = jc_star;
    scan.report.jc_dstar = jc_dstar;
    scan.report.delta_s = scan.delta_s;
    scan.report.gap_at_dstar = gap_at(jc_dstar);
    scan.report.curve = scan.curve;
    return scan;
}

double solve_jc_for_gap(const CompositeGapModel& model, const KinkReport& kinks,
                        double target_gap) {
    const double ds = model.delta_s();
    if (!(target_gap > 0.0))
        throw std::invalid_argument("target gap must be positive");
    if (target_gap > ds + 1e-9)
        throw std::invalid_argument("target gap " + std::to_string(target_gap) +
                                    " exceeds the chainless gap " + std::to_string(ds));
    if (target_gap >= ds - 1e-9) return kinks.jc_dstar;

    double a = kinks.jc_star;
    double b = kinks.jc_dstar;
    double mid = 0.5 * (a + b);
    for (int iter = 0; iter < 100 && b - a > 1e-13; ++iter) {
        mid = 0.5 * (a + b);
        const double gap = model.delta_c(mid);
        if (std::abs(gap - target_gap) <= 1e-7) return mid;
        (gap < target_gap ? a : b) = mid;
    }
    if (std::abs(model.delta_c(mid) - target_gap) > 1e-6)
        throw std::runtime_error("gap inversion did not converge to the target");
    return mid;
}

double solve_jc_for_gap(const ProblemGraph& base, const ChainSet& chains, double target_gap,
                        double jc_lo, double jc_hi, const EnumOptions& opts) {
    const KinkScan scan = find_kinks(base, chains, jc_lo, jc_hi, opts);
    if (!scan.found)
        throw std::invalid_argument("cannot invert the gap curve: " + scan.diagnosis);
    const CompositeGapModel model = analyze_composite(base, chains, opts);
    return solve_jc_for_gap(model, scan.report, target_gap);
}

}  // namespace chaincal
