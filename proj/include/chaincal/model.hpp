#pragma once

#include <cstdint>
#include <vector>

namespace chaincal {

/// Spin configuration; every entry is -1 or +1.
using SpinConfig = std::vector<std::int8_t>;

enum class Boundary { periodic, open };

enum class Order { uniform, neel, stripe_h, stripe_v, other };

enum class QubitRole : std::uint8_t { lattice, chain };

/// One weighted coupling between qubits a < b. The energy convention is
/// fixed across the library:  H(s) = -sum_edges J * s_a * s_b  (no linear
/// terms), so J > 0 favors alignment and J < 0 favors anti-alignment.
struct Edge {
    int a = 0;
    int b = 0;
    double coupling = 0.0;
};

/// J1-J2 square-lattice description.
///
/// `j1` couples nearest neighbors and `j2` the two diagonals of every
/// plaquette. The diagonal bonds compete with the nearest-neighbor ones:
/// for |j2/j1| < 0.5 the ground state is uniform (j2/j1 > 0) or Neel
/// (j2/j1 < 0), for |j2/j1| > 0.5 it is striped, and |j2/j1| = 0.5 is the
/// fully frustrated point. The two signs of j2/j1 give sublattice-gauge
/// twins with identical spectra.
struct LatticeSpec {
    int length = 4;  // L; the lattice has L*L sites
    double j1 = 1.0;
    double j2 = 0.0;
    Boundary boundary = Boundary::periodic;

    void validate() const;  // throws std::invalid_argument
};

/// Diagonal-bond disorder: each diagonal bond independently takes magnitude
/// `j2_high` with probability `x`, else `j2_low`.
struct DisorderSpec {
    double x = 0.5;
    double j2_low = 0.25;
    double j2_high = 0.75;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Weighted coupling graph over binary spins. Immutable once built; all
/// free functions below treat it as read-only, so instances can be shared
/// across threads freely.
struct ProblemGraph {
    int num_qubits = 0;
    std::vector<Edge> edges;       // a < b, unique pairs, no self-loops
    std::vector<QubitRole> roles;  // empty, or one entry per qubit

    void validate() const;  // throws std::invalid_argument on any violation
};

/// Builds the L x L lattice graph for `spec`.
///
/// Stored couplings: nearest-neighbor bonds carry +|j1| when j2/j1 >= 0 and
/// -|j1| otherwise (the Neel twin); diagonal bonds always carry -|j2|, the
/// frustrating direction. Wrap-around duplicate pairs on tiny lattices
/// (L = 2 periodic) are merged into a single edge with summed coupling.
/// Bonds with zero coupling are omitted.
ProblemGraph build_j1j2_lattice(const LatticeSpec& spec);

/// Re-draws every diagonal bond of a lattice built by build_j1j2_lattice.
/// Pure function of (graph, spec): a fixed seed gives a bit-identical
/// result. Nearest-neighbor bonds are untouched.
ProblemGraph apply_diagonal_disorder(const ProblemGraph& graph, const DisorderSpec& spec);

/// Exact energy H(s) = -sum J s s. Throws on length mismatch.
double energy(const ProblemGraph& graph, const SpinConfig& config);

/// Matches `config` against the four reference patterns (and their global
/// flips) on an L x L grid; anything else is Order::other.
Order classify_order(const SpinConfig& config, int length);

/// Reference pattern generator used by classify_order and by tests;
/// `which` must not be Order::other.
SpinConfig reference_pattern(Order which, int length);

/// True when edge (a, b) of an L x L lattice graph is a diagonal
/// (next-nearest-neighbor) bond. Works for both boundary conditions.
bool is_diagonal_bond(int length, int a, int b);

}  // namespace chaincal
