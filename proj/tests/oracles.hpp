#pragma once

// Independent reference implementations used only by tests. These stay
// deliberately naive (full energy recomputation per state, no Gray walk,
// no incremental updates) so they cannot share a bug with the library path
// they are checking.

#include <cstdint>
#include <vector>

#include "chaincal/model.hpp"
#include "chaincal/rng.hpp"

namespace chaincal::testing {

struct NaiveLevels {
    double e0 = 0.0;
    double e1 = 0.0;
    long long g0 = 0;
    bool single_level = false;
};

inline double naive_energy(const ProblemGraph& graph, std::uint64_t mask) {
    double total = 0.0;
    for (const Edge& e : graph.edges) {
        const double sa = ((mask >> e.a) & 1u) ? 1.0 : -1.0;
        const double sb = ((mask >> e.b) & 1u) ? 1.0 : -1.0;
        total -= e.coupling * sa * sb;
    }
    return total;
}

inline NaiveLevels naive_ground_and_gap(const ProblemGraph& graph, double tol = 1e-9) {
    const std::uint64_t total = std::uint64_t{1} << graph.num_qubits;
    NaiveLevels out;
    bool have0 = false, have1 = false;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const double e = naive_energy(graph, mask);
        if (!have0 || e < out.e0 - tol) {
            if (have0 && out.e0 < (have1 ? out.e1 : out.e0) + tol) {
                out.e1 = out.e0;
                have1 = true;
            }
            out.e0 = e;
            out.g0 = 1;
            have0 = true;
        } else if (e <= out.e0 + tol) {
            ++out.g0;
            if (e < out.e0) out.e0 = e;
        } else if (!have1 || e < out.e1) {
            out.e1 = e;
            have1 = true;
        }
    }
    if (!have1) {
        out.e1 = out.e0;
        out.single_level = true;
    }
    return out;
}

/// All ground configurations (as spin configs), for order classification.
inline std::vector<SpinConfig> naive_ground_configs(const ProblemGraph& graph,
                                                    double tol = 1e-9) {
    const std::uint64_t total = std::uint64_t{1} << graph.num_qubits;
    double best = naive_energy(graph, 0);
    for (std::uint64_t mask = 1; mask < total; ++mask)
        best = std::min(best, naive_energy(graph, mask));
    std::vector<SpinConfig> grounds;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (naive_energy(graph, mask) <= best + tol) {
            SpinConfig config(graph.num_qubits);
            for (int q = 0; q < graph.num_qubits; ++q)
                config[q] = ((mask >> q) & 1u) ? 1 : -1;
            grounds.push_back(std::move(config));
        }
    }
    return grounds;
}

/// Random connected-ish test graph with signed couplings in [-2, 2].
inline ProblemGraph random_graph(Rng& rng, int min_qubits, int max_qubits) {
    ProblemGraph graph;
    graph.num_qubits =
        min_qubits + static_cast<int>(rng.next_below(
                         static_cast<std::uint64_t>(max_qubits - min_qubits + 1)));
    for (int a = 0; a < graph.num_qubits; ++a) {
        for (int b = a + 1; b < graph.num_qubits; ++b) {
            if (rng.next_double() < 0.35) {
                double coupling = 4.0 * rng.next_double() - 2.0;
                if (coupling == 0.0) coupling = 0.5;
                graph.edges.push_back({a, b, coupling});
            }
        }
    }
    return graph;
}

inline SpinConfig random_config(Rng& rng, int num_qubits) {
    SpinConfig config(num_qubits);
    for (int q = 0; q < num_qubits; ++q)
        config[q] = static_cast<std::int8_t>(rng.next_spin());
    return config;
}

}  // namespace chaincal::testing
