#include "chaincal/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "chaincal/rng.hpp"

namespace chaincal {

namespace {

int lattice_side(const ProblemGraph& base) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(base.num_qubits))));
    if (side * side != base.num_qubits)
        throw std::invalid_argument("base graph is not a square lattice");
    return side;
}

}  // namespace

int ChainSet::total_qubits() const {
    return std::accumulate(chains.begin(), chains.end(), 0,
                           [](int acc, const Chain& c) { return acc + c.length; });
}

int ChainSet::bond_count() const { return total_qubits(); }

void ChainSet::canonicalize() {
    std::sort(chains.begin(), chains.end(),
              [](const Chain& a, const Chain& b) { return a.site < b.site; });
}

void ChainSet::validate(int lattice_length) const {
    const int sites = lattice_length * lattice_length;
    std::unordered_set<int> seen;
    for (const Chain& c : chains) {
        if (c.site < 0 || c.site >= sites)
            throw std::invalid_argument("chain site " + std::to_string(c.site) + " out of range");
        if (c.length < 1 || c.length > lattice_length)
            throw std::invalid_argument("chain length must be in [1, L]");
        if (!seen.insert(c.site).second)
            throw std::invalid_argument("duplicate chain site " + std::to_string(c.site));
    }
}

ChainSet sample_chains(int lattice_length, int num_chains, std::uint64_t seed) {
    const int sites = lattice_length * lattice_length;
    if (num_chains < 1 || num_chains > sites)
        throw std::invalid_argument("num_chains must be in [1, L*L]");

    Rng rng(derive_seed(seed, 0xc4a1));

    // Partial Fisher-Yates for the site draw (without replacement).
    std::vector<int> pool(sites);
    std::iota(pool.begin(), pool.end(), 0);
    ChainSet result;
    result.chains.reserve(num_chains);
    for (int k = 0; k < num_chains; ++k) {
        const auto j = k + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(sites - k)));
        std::swap(pool[k], pool[j]);
        const int length = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(lattice_length)));
        result.chains.push_back({pool[k], length});
    }
    result.canonicalize();
    result.validate(lattice_length);
    return result;
}

ChainSet sample_chains_with_total(int lattice_length, int target_total, int max_tries,
                                  std::uint64_t seed) {
    const int L = lattice_length;
    const int sites = L * L;
    if (L < 2) throw std::invalid_argument("lattice length must be >= 2");
    if (max_tries < 1) throw std::invalid_argument("max_tries must be >= 1");
    if (target_total < 1 || target_total > sites * L)
        throw ChainSamplingError("target chain-qubit total " + std::to_string(target_total) +
                                 " is outside the achievable range [1, " +
                                 std::to_string(sites * L) + "]");

    // p[k][t] = probability that k independent uniform{1..L} lengths sum to t.
    // Conditioning the (uniform chain count, uniform lengths) draw on the
    // total weights each k by p[k][target]; lengths are then drawn
    // sequentially from the same conditional law.
    std::vector<std::vector<double>> p(sites + 1, std::vector<double>(target_total + 1, 0.0));
    p[0][0] = 1.0;
    for (int k = 1; k <= sites; ++k) {
        for (int t = k; t <= std::min(target_total, k * L); ++t) {
            double acc = 0.0;
            for (int v = 1; v <= L && v <= t; ++v) acc += p[k - 1][t - v];
            p[k][t] = acc / L;
        }
    }

    std::vector<double> weight(sites + 1, 0.0);
    double total_weight = 0.0;
    for (int k = 1; k <= sites; ++k) total_weight += weight[k] = p[k][target_total];
    if (total_weight <= 0.0)
        throw ChainSamplingError("no chain set on an L=" + std::to_string(L) +
                                 " lattice reaches total " + std::to_string(target_total));

    Rng rng(derive_seed(seed, 0xc4a2));

    double u = rng.next_double() * total_weight;
    int num_chains = sites;
    for (int k = 1; k <= sites; ++k) {
        if (u < weight[k]) {
            num_chains = k;
            break;
        }
        u -= weight[k];
    }

    std::vector<int> lengths(num_chains);
    int remaining = target_total;
    for (int slot = 0; slot < num_chains; ++slot) {
        const int left = num_chains - slot - 1;
        double v = rng.next_double() * p[left + 1][remaining] * L;
        int choice = std::min(L, remaining);
        for (int value = 1; value <= L && value <= remaining; ++value) {
            const double mass = (remaining - value <= left * L) ? p[left][remaining - value] : 0.0;
            if (v < mass) {
                choice = value;
                break;
            }
            v -= mass;
        }
        lengths[slot] = choice;
        remaining -= choice;
    }

    std::vector<int> pool(sites);
    std::iota(pool.begin(), pool.end(), 0);
    ChainSet result;
    result.chains.reserve(num_chains);
    for (int k = 0; k < num_chains; ++k) {
        const auto j = k + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(sites - k)));
        std::swap(pool[k], pool[j]);
        result.chains.push_back({pool[k], lengths[k]});
    }
    result.canonicalize();
    result.validate(L);
    if (result.total_qubits() != target_total)
        throw ChainSamplingError("internal error: sampled total mismatch");
    return result;
}

EmbeddedProblem embed(const ProblemGraph& base, const ChainSet& chains, double jc) {
    if (jc < 0.0) throw std::invalid_argument("jc must be >= 0");
    const int L = lattice_side(base);
    ChainSet ordered = chains;
    ordered.canonicalize();
    ordered.validate(L);

    EmbeddedProblem out;
    out.base = base;
    out.chains = ordered;
    out.jc = jc;
    out.lattice_qubits = base.num_qubits;

    const int num_chains = static_cast<int>(ordered.chains.size());
    int next = base.num_qubits;
    std::vector<int> far_end(base.num_qubits, -1);
    out.chain_first.resize(num_chains);
    for (int k = 0; k < num_chains; ++k) {
        const Chain& c = ordered.chains[k];
        out.chain_first[k] = next;
        int prev = c.site;
        for (int step = 0; step < c.length; ++step) {
            out.chain_bonds.emplace_back(prev, next);
            prev = next++;
        }
        far_end[c.site] = prev;
    }

    ProblemGraph composite;
    composite.num_qubits = next;
    composite.roles.assign(static_cast<std::size_t>(next), QubitRole::chain);
    for (int q = 0; q < base.num_qubits; ++q) composite.roles[q] = QubitRole::lattice;

    // Problem bonds: diagonals follow their site's chain to the far end.
    auto relocate = [&](int q) { return far_end[q] >= 0 ? far_end[q] : q; };
    for (const Edge& e : base.edges) {
        if (is_diagonal_bond(L, e.a, e.b)) {
            int a = relocate(e.a), b = relocate(e.b);
            composite.edges.push_back({std::min(a, b), std::max(a, b), e.coupling});
        } else {
            composite.edges.push_back(e);
        }
    }
    for (const auto& [a, b] : out.chain_bonds)
        composite.edges.push_back({std::min(a, b), std::max(a, b), jc});

    composite.validate();
    out.composite = std::move(composite);
    return out;
}

DecodeResult decode(const SpinConfig& config, const EmbeddedProblem& embedded,
                    DecodePolicy policy) {
    if (static_cast<int>(config.size()) != embedded.composite.num_qubits)
        throw std::invalid_argument("configuration length does not match composite qubit count");

    DecodeResult result;
    result.lattice_config.assign(config.begin(), config.begin() + embedded.lattice_qubits);

    for (std::size_t k = 0; k < embedded.chains.chains.size(); ++k) {
        const Chain& c = embedded.chains.chains[k];
        const std::int8_t site_value = config[c.site];
        int agree = 1, disagree = 0;
        for (int q = embedded.chain_first[k]; q < embedded.chain_first[k] + c.length; ++q)
            (config[q] == site_value ? agree : disagree)++;
        if (disagree > 0) ++result.broken_chains;
        if (policy == DecodePolicy::majority && disagree > agree)
            result.lattice_config[c.site] = static_cast<std::int8_t>(-site_value);
    }
    return result;
}

SpinConfig extend_config(const SpinConfig& lattice_config, const EmbeddedProblem& embedded) {
    if (static_cast<int>(lattice_config.size()) != embedded.lattice_qubits)
        throw std::invalid_argument("lattice configuration length mismatch");
    SpinConfig full = lattice_config;
    full.resize(static_cast<std::size_t>(embedded.composite.num_qubits));
    for (std::size_t k = 0; k < embedded.chains.chains.size(); ++k) {
        const Chain& c = embedded.chains.chains[k];
        for (int q = embedded.chain_first[k]; q < embedded.chain_first[k] + c.length; ++q)
            full[q] = lattice_config[c.site];
    }
    return full;
}

double total_ground_energy(const EmbeddedProblem& embedded, double eg_per_site) {
    return embedded.lattice_qubits * eg_per_site - embedded.chains.bond_count() * embedded.jc;
}

}  // namespace chaincal
