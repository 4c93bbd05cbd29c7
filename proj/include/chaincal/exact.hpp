#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaincal/embedding.hpp"
#include "chaincal/model.hpp"

namespace chaincal {

/// Thrown when a requested enumeration exceeds the qubit cap.
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumOptions {
    int max_qubits = 30;      // refuse larger state spaces outright
    double tolerance = 1e-9;  // absolute tolerance for level distinctness
    int threads = 0;          // 0 = auto, capped by CHAINCAL_THREADS
};

/// Exact ground and first-excited data from full state enumeration.
struct GapReport {
    double e0 = 0.0;
    double e1 = 0.0;
    long long g0 = 0;        // ground degeneracy
    double gap = 0.0;        // e1 - e0, or 0 when single_level
    bool single_level = false;
};

/// Enumerates all 2^N configurations (Gray-code walk, O(degree) update per
/// step, partitioned across threads) and reports the two lowest distinct
/// energy levels. Deterministic for any thread count.
GapReport ground_and_gap(const ProblemGraph& graph, const EnumOptions& opts = {});

/// Full sorted spectrum as (energy, degeneracy) pairs; capped at 20 qubits.
std::vector<std::pair<double, long long>> full_spectrum(const ProblemGraph& graph,
                                                        const EnumOptions& opts = {});

/// Spectral summary of a lattice-plus-chains composite, valid for every
/// chain coupling jc at once.
///
/// Any configuration's energy is affine in jc: E = A - jc * (N_c - 2b),
/// where A is the problem-bond part and b the number of violated chain
/// bonds. One enumeration therefore records, for each b, the few lowest
/// distinct A-levels with degeneracies; gaps at any jc follow by merging
/// these affine branches.
class CompositeGapModel {
public:
    struct Level {
        double energy = 0.0;  // problem-bond energy A
        long long count = 0;
    };

    /// True distinct-level gap report of the composite at `jc`.
    GapReport gap_report(double jc) const;

    /// The gap protecting the encoded solution at `jc` (the quantity a
    /// Fig.-style gap curve plots): the distance from the intact-chain
    /// encoding of the lattice ground state up to the nearest other level.
    /// Zero whenever broken-chain configurations reach or undercut that
    /// encoding (including jc = 0, where chain qubits flip freely).
    double delta_c(double jc) const;

    double delta_s() const { return lattice_gap_; }
    double lattice_e0() const { return lattice_e0_; }
    long long lattice_g0() const { return lattice_g0_; }
    int chain_bond_count() const { return chain_bonds_; }

private:
    friend CompositeGapModel analyze_composite(const ProblemGraph&, const ChainSet&,
                                               const EnumOptions&);

    std::vector<std::vector<Level>> branches_;  // indexed by broken-bond count b
    int chain_bonds_ = 0;
    double lattice_e0_ = 0.0;
    long long lattice_g0_ = 0;
    double lattice_gap_ = 0.0;
    bool lattice_single_level_ = false;
    double tolerance_ = 1e-9;
};

/// Enumerates the composite of `base` and `chains` once and returns the
/// jc-independent branch model. Cap applies to L^2 + N_c.
CompositeGapModel analyze_composite(const ProblemGraph& base, const ChainSet& chains,
                                    const EnumOptions& opts = {});

/// delta_c at each grid point, in grid order.
std::vector<std::pair<double, double>> delta_c_curve(const ProblemGraph& base,
                                                     const ChainSet& chains,
                                                     const std::vector<double>& jc_grid,
                                                     const EnumOptions& opts = {});

/// The located kink pair of a delta_c(jc) curve.
struct KinkReport {
    double jc_star = 0.0;   // largest jc with delta_c = 0 (chains start holding)
    double jc_dstar = 0.0;  // smallest jc with delta_c = delta_s (chains dominate)
    double delta_s = 0.0;
    double gap_at_dstar = 0.0;
    std::vector<std::pair<double, double>> curve;  // coarse-grid samples
};

/// Outcome of a kink search: either a report, or an explicit diagnosis of
/// why the bracket shows no usable two-kink structure (as happens at the
/// fully frustrated point, where the stable window escapes any bracket
/// sized for the ordinary regime).
struct KinkScan {
    bool found = false;
    KinkReport report;
    std::string diagnosis;  // empty when found
    double gap_lo = 0.0;
    double gap_hi = 0.0;
    double delta_s = 0.0;
    std::vector<std::pair<double, double>> curve;
};

/// Scans [jc_lo, jc_hi] with `grid_step` and refines both kinks by
/// bisection to |d jc| <= 1e-6. The bracket must start in the zero-gap
/// region and end in the saturated region, else a diagnosis is returned.
KinkScan find_kinks(const ProblemGraph& base, const ChainSet& chains, double jc_lo,
                    double jc_hi, const EnumOptions& opts = {}, double grid_step = 0.01);

/// Inverts the non-decreasing delta_c curve: returns jc in
/// [jc_star, jc_dstar] with |delta_c(jc) - target_gap| <= 1e-6.
/// Requires 0 < target_gap <= delta_s.
double solve_jc_for_gap(const CompositeGapModel& model, const KinkReport& kinks,
                        double target_gap);

/// Convenience overload; locates the kinks in [jc_lo, jc_hi] first and
/// throws std::invalid_argument if that fails.
double solve_jc_for_gap(const ProblemGraph& base, const ChainSet& chains, double target_gap,
                        double jc_lo, double jc_hi, const EnumOptions& opts = {});

}  // namespace chaincal
