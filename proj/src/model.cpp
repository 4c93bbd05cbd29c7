#include "chaincal/model.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "chaincal/rng.hpp"

namespace chaincal {

namespace {

int lattice_side(int num_qubits) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(num_qubits))));
    if (side * side != num_qubits)
        throw std::invalid_argument("graph is not a square lattice: " +
                                    std::to_string(num_qubits) + " qubits");
    return side;
}

}  // namespace

void LatticeSpec::validate() const {
    if (length < 2) throw std::invalid_argument("lattice length must be >= 2");
    if (j1 == 0.0) throw std::invalid_argument("j1 must be nonzero");
}

void DisorderSpec::validate() const {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("disorder ratio x must be in [0, 1]");
}

void ProblemGraph::validate() const {
    if (num_qubits <= 0) throw std::invalid_argument("graph must have at least one qubit");
    if (!roles.empty() && static_cast<int>(roles.size()) != num_qubits)
        throw std::invalid_argument("roles must be empty or have one entry per qubit");
    std::map<std::pair<int, int>, int> seen;
    for (const Edge& e : edges) {
        if (e.a == e.b) throw std::invalid_argument("self-loop on qubit " + std::to_string(e.a));
        if (e.a < 0 || e.b < 0 || e.a >= num_qubits || e.b >= num_qubits)
            throw std::invalid_argument("edge index out of range");
        auto key = std::minmax(e.a, e.b);
        if (++seen[key] > 1)
            throw std::invalid_argument("duplicate edge (" + std::to_string(key.first) + ", " +
                                        std::to_string(key.second) + ")");
    }
}

bool is_diagonal_bond(int length, int a, int b) {
    const int ra = a / length, ca = a % length;
    const int rb = b / length, cb = b % length;
    auto wrapped = [length](int u, int v) {
        int d = std::abs(u - v);
        return std::min(d, length - d);
    };
    return wrapped(ra, rb) == 1 && wrapped(ca, cb) == 1;
}

ProblemGraph build_j1j2_lattice(const LatticeSpec& spec) {
    spec.validate();
    const int L = spec.length;
    const bool periodic = spec.boundary == Boundary::periodic;

    // The j2/j1 ratio picks the gauge twin; |j2| always frustrates.
    const double nn = (spec.j2 / spec.j1 < 0.0) ? -std::abs(spec.j1) : std::abs(spec.j1);
    const double diag = -std::abs(spec.j2);

    std::map<std::pair<int, int>, double> bonds;
    auto add = [&bonds](int a, int b, double coupling) {
        if (coupling == 0.0) return;
        bonds[std::minmax(a, b)] += coupling;  // merges wrap-around duplicates
    };
    auto site = [L](int r, int c) { return ((r % L + L) % L) * L + ((c % L + L) % L); };

    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) {
            const int i = site(r, c);
            if (periodic || c + 1 < L) add(i, site(r, c + 1), nn);
            if (periodic || r + 1 < L) add(i, site(r + 1, c), nn);
            if (periodic || (r + 1 < L && c + 1 < L)) add(i, site(r + 1, c + 1), diag);
            if (periodic || (r + 1 < L && c - 1 >= 0)) add(i, site(r + 1, c - 1), diag);
        }
    }

    ProblemGraph graph;
    graph.num_qubits = L * L;
    graph.roles.assign(graph.num_qubits, QubitRole::lattice);
    graph.edges.reserve(bonds.size());
    for (const auto& [key, coupling] : bonds)
        graph.edges.push_back({key.first, key.second, coupling});
    graph.validate();
    return graph;
}

ProblemGraph apply_diagonal_disorder(const ProblemGraph& graph, const DisorderSpec& spec) {
    spec.validate();
    const int L = lattice_side(graph.num_qubits);
    Rng rng(derive_seed(spec.seed, 0x6a2b));

    ProblemGraph out = graph;
    for (Edge& e : out.edges) {
        if (!is_diagonal_bond(L, e.a, e.b)) continue;
        const double magnitude = (rng.next_double() < spec.x) ? spec.j2_high : spec.j2_low;
        e.coupling = -magnitude;
    }
    return out;
}

double energy(const ProblemGraph& graph, const SpinConfig& config) {
    if (static_cast<int>(config.size()) != graph.num_qubits)
        throw std::invalid_argument("configuration length " + std::to_string(config.size()) +
                                    " does not match qubit count " +
                                    std::to_string(graph.num_qubits));
    double total = 0.0;
    for (const Edge& e : graph.edges)
        total -= e.coupling * static_cast<double>(config[e.a]) * static_cast<double>(config[e.b]);
    return total;
}

SpinConfig reference_pattern(Order which, int length) {
    SpinConfig pattern(static_cast<std::size_t>(length) * length);
    for (int r = 0; r < length; ++r) {
        for (int c = 0; c < length; ++c) {
            int sign;
            switch (which) {
                case Order::uniform: sign = 1; break;
                case Order::neel: sign = ((r + c) % 2 == 0) ? 1 : -1; break;
                case Order::stripe_h: sign = (r % 2 == 0) ? 1 : -1; break;
                case Order::stripe_v: sign = (c % 2 == 0) ? 1 : -1; break;
                default: throw std::invalid_argument("no reference pattern for Order::other");
            }
            pattern[static_cast<std::size_t>(r) * length + c] = static_cast<std::int8_t>(sign);
        }
    }
    return pattern;
}

Order classify_order(const SpinConfig& config, int length) {
    if (static_cast<int>(config.size()) != length * length)
        throw std::invalid_argument("configuration length does not match L*L");
    for (Order candidate :
         {Order::uniform, Order::neel, Order::stripe_h, Order::stripe_v}) {
        const SpinConfig pattern = reference_pattern(candidate, length);
        bool same = true, flipped = true;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            same = same && config[i] == pattern[i];
            flipped = flipped && config[i] == -pattern[i];
        }
        if (same || flipped) return candidate;
    }
    return Order::other;
}

}  // namespace chaincal
