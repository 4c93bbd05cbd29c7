#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaincal/model.hpp"

namespace chaincal {

/// One chain: `length` extra qubits hanging off lattice site `site` as a
/// ferromagnetically coupled path, contributing exactly `length` bonds.
struct Chain {
    int site = 0;
    int length = 1;
};

/// A set of chains over distinct lattice sites. Stored sorted by site so
/// the composite qubit layout is reproducible.
struct ChainSet {
    std::vector<Chain> chains;

    int total_qubits() const;  // N_c = sum of lengths
    int bond_count() const;    // equals total_qubits()
    void validate(int lattice_length) const;
    /// Sorts by site; called by the samplers and by embed().
    void canonicalize();
};

/// Draws `num_chains` distinct sites uniformly from the L*L lattice and a
/// length uniform in {1, ..., L} for each. Deterministic given the seed.
ChainSet sample_chains(int lattice_length, int num_chains, std::uint64_t seed);

/// Like sample_chains but conditioned on the total qubit count: the result
/// is distributed exactly as repeated sample_chains draws (with the chain
/// count itself uniform in [1, L*L]) kept only when the total equals
/// `target_total`. Sampling is done directly from that conditional law, so
/// boundary targets (e.g. the unique maximal chain set) return immediately.
/// Throws ChainSamplingError when no chain set can reach the target.
ChainSet sample_chains_with_total(int lattice_length, int target_total, int max_tries,
                                  std::uint64_t seed);

/// Composite problem: lattice + chains.
///
/// Layout: lattice qubits keep indices [0, L*L); chain qubits follow in
/// site order, each chain contiguous. Every chain adds `length` bonds of
/// coupling +jc (path: site, then successive chain qubits). The diagonal
/// bonds of a chained site ride the chain: their endpoint moves from the
/// lattice qubit to the far end of the chain, which is what lets too-weak
/// chains break in the ground state. Nearest-neighbor bonds stay in-plane.
struct EmbeddedProblem {
    ProblemGraph base;  // the chainless lattice
    ChainSet chains;
    double jc = 0.0;
    ProblemGraph composite;
    int lattice_qubits = 0;
    std::vector<std::pair<int, int>> chain_bonds;  // composite indices, coupling +jc
    std::vector<int> chain_first;                  // first composite qubit of chain k

    /// Far-end composite qubit of chain k.
    int chain_top(int k) const { return chain_first[k] + chains.chains[k].length - 1; }
};

EmbeddedProblem embed(const ProblemGraph& base, const ChainSet& chains, double jc);

enum class DecodePolicy { strict, majority };

struct DecodeResult {
    SpinConfig lattice_config;
    int broken_chains = 0;
};

/// Maps a composite configuration back to a lattice configuration.
/// A chain is broken when its group (lattice qubit plus chain qubits) is
/// not unanimous. strict: the lattice restriction as-is. majority: each
/// chained site takes the majority over its group, ties going to the
/// lattice qubit's value.
DecodeResult decode(const SpinConfig& config, const EmbeddedProblem& embedded,
                    DecodePolicy policy);

/// Extends a lattice configuration by copying each site's spin down its
/// chain; the inverse of decode on intact configurations.
SpinConfig extend_config(const SpinConfig& lattice_config, const EmbeddedProblem& embedded);

/// Ground energy of the composite in the intact-chain regime:
/// L^2 * eg_per_site - N_c * jc.
double total_ground_energy(const EmbeddedProblem& embedded, double eg_per_site);

struct ChainSamplingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace chaincal
