#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chaincal/model.hpp"
#include "oracles.hpp"

using namespace chaincal;

namespace {

int count_edges(const ProblemGraph& g, bool diagonal) {
    const int L = static_cast<int>(std::lround(std::sqrt(double(g.num_qubits))));
    return static_cast<int>(std::count_if(g.edges.begin(), g.edges.end(), [&](const Edge& e) {
        return is_diagonal_bond(L, e.a, e.b) == diagonal;
    }));
}

}  // namespace

TEST_CASE("lattice edge counts, periodic L=4") {
    const ProblemGraph g = build_j1j2_lattice({4, 1.0, 0.46, Boundary::periodic});
    CHECK(g.num_qubits == 16);
    CHECK(count_edges(g, false) == 32);
    CHECK(count_edges(g, true) == 32);
    for (const Edge& e : g.edges) {
        if (is_diagonal_bond(4, e.a, e.b))
            CHECK(e.coupling == doctest::Approx(-0.46));
        else
            CHECK(e.coupling == doctest::Approx(1.0));
    }
}

TEST_CASE("lattice edge counts, open L=3") {
    const ProblemGraph g = build_j1j2_lattice({3, 1.0, 0.5, Boundary::open});
    CHECK(g.num_qubits == 9);
    CHECK(count_edges(g, false) == 12);  // 2 L (L-1)
    CHECK(count_edges(g, true) == 8);    // 2 (L-1)^2
}

TEST_CASE("edge-count formulas hold for larger lattices") {
    for (int L : {3, 5, 8}) {
        const ProblemGraph periodic = build_j1j2_lattice({L, 1.0, 0.3, Boundary::periodic});
        CHECK(count_edges(periodic, false) == 2 * L * L);
        CHECK(count_edges(periodic, true) == 2 * L * L);
        const ProblemGraph open = build_j1j2_lattice({L, 1.0, 0.3, Boundary::open});
        CHECK(count_edges(open, false) == 2 * L * (L - 1));
        CHECK(count_edges(open, true) == 2 * (L - 1) * (L - 1));
    }
}

TEST_CASE("L=2 periodic merges wrap-around duplicates") {
    const ProblemGraph g = build_j1j2_lattice({2, 1.0, 0.0, Boundary::periodic});
    CHECK(g.num_qubits == 4);
    CHECK(g.edges.size() == 4);  // doubled nearest bonds only; no diagonals at j2=0
    for (const Edge& e : g.edges) CHECK(e.coupling == doctest::Approx(2.0));

    const ProblemGraph with_diag = build_j1j2_lattice({2, 1.0, 0.25, Boundary::periodic});
    CHECK(with_diag.edges.size() == 6);
    int diagonals = 0;
    for (const Edge& e : with_diag.edges) {
        if (is_diagonal_bond(2, e.a, e.b)) {
            ++diagonals;
            CHECK(e.coupling == doctest::Approx(-1.0));  // four-way merged 0.25
        } else {
            CHECK(e.coupling == doctest::Approx(2.0));
        }
    }
    CHECK(diagonals == 2);
}

TEST_CASE("lattice spec validation") {
    CHECK_THROWS_AS(build_j1j2_lattice({1, 1.0, 0.4, Boundary::periodic}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_j1j2_lattice({4, 0.0, 0.4, Boundary::periodic}),
                    std::invalid_argument);
}

TEST_CASE("energy of a single edge") {
    ProblemGraph g;
    g.num_qubits = 2;
    g.edges.push_back({0, 1, 1.0});
    CHECK(energy(g, {1, 1}) == doctest::Approx(-1.0));
    CHECK(energy(g, {1, -1}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(energy(g, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("all-up energy of the frustrated L=4 lattice") {
    const ProblemGraph g = build_j1j2_lattice({4, 1.0, 0.46, Boundary::periodic});
    const SpinConfig up(16, 1);
    // 32 satisfied nearest bonds, 32 frustrated diagonals
    const double expected = -(32.0 * 1.0) + (32.0 * 0.46);
    CHECK(energy(g, up) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(energy(g, up) / 16.0 == doctest::Approx(-1.08).epsilon(1e-12));
}

TEST_CASE("energy is invariant under a global spin flip") {
    Rng rng(20240517);
    for (int trial = 0; trial < 10000; ++trial) {
        const ProblemGraph g = testing::random_graph(rng, 2, 10);
        SpinConfig s = testing::random_config(rng, g.num_qubits);
        SpinConfig flipped = s;
        for (auto& v : flipped) v = static_cast<std::int8_t>(-v);
        CHECK(energy(g, s) == energy(g, flipped));
    }
}

TEST_CASE("classify_order recognizes reference patterns and flips") {
    const int L = 4;
    for (Order which : {Order::uniform, Order::neel, Order::stripe_h, Order::stripe_v}) {
        SpinConfig p = reference_pattern(which, L);
        CHECK(classify_order(p, L) == which);
        for (auto& v : p) v = static_cast<std::int8_t>(-v);
        CHECK(classify_order(p, L) == which);
    }
    SpinConfig odd = reference_pattern(Order::uniform, L);
    odd[5] = -1;
    CHECK(classify_order(odd, L) == Order::other);
}

TEST_CASE("exact ground states follow the frustration phase diagram at L=4") {
    auto ground_orders = [](double j1, double j2) {
        const ProblemGraph g = build_j1j2_lattice({4, j1, j2, Boundary::periodic});
        std::vector<Order> orders;
        for (const SpinConfig& s : testing::naive_ground_configs(g))
            orders.push_back(classify_order(s, 4));
        return orders;
    };

    for (Order o : ground_orders(1.0, 0.46)) CHECK(o == Order::uniform);
    for (Order o : ground_orders(1.0, -0.46)) CHECK(o == Order::neel);
    for (Order o : ground_orders(-1.0, 0.46)) CHECK(o == Order::neel);
    for (Order o : ground_orders(1.0, 0.6))
        CHECK((o == Order::stripe_h || o == Order::stripe_v));
}

TEST_CASE("diagonal disorder endpoints and determinism") {
    const ProblemGraph base = build_j1j2_lattice({4, 1.0, 0.25, Boundary::periodic});

    const ProblemGraph all_low = apply_diagonal_disorder(base, {0.0, 0.25, 0.75, 42});
    const ProblemGraph all_high = apply_diagonal_disorder(base, {1.0, 0.25, 0.75, 42});
    for (std::size_t i = 0; i < base.edges.size(); ++i) {
        const Edge& e = base.edges[i];
        if (is_diagonal_bond(4, e.a, e.b)) {
            CHECK(all_low.edges[i].coupling == doctest::Approx(-0.25));
            CHECK(all_high.edges[i].coupling == doctest::Approx(-0.75));
        } else {
            CHECK(all_low.edges[i].coupling == e.coupling);
            CHECK(all_high.edges[i].coupling == e.coupling);
        }
    }

    const DisorderSpec spec{0.5, 0.25, 0.75, 1234};
    const ProblemGraph a = apply_diagonal_disorder(base, spec);
    const ProblemGraph b = apply_diagonal_disorder(base, spec);
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        CHECK(a.edges[i].coupling == b.edges[i].coupling);

    CHECK_THROWS_AS(apply_diagonal_disorder(base, {1.5, 0.25, 0.75, 0}),
                    std::invalid_argument);
}

TEST_CASE("disorder draw matches the binomial law") {
    const ProblemGraph base = build_j1j2_lattice({8, 1.0, 0.25, Boundary::periodic});
    const int diagonal_bonds = 2 * 8 * 8;
    const int seeds = 1000;
    const double x = 0.5;

    long long high_total = 0;
    for (int s = 0; s < seeds; ++s) {
        const ProblemGraph g = apply_diagonal_disorder(base, {x, 0.25, 0.75,
                                                              static_cast<std::uint64_t>(s)});
        for (const Edge& e : g.edges)
            if (is_diagonal_bond(8, e.a, e.b) && e.coupling == -0.75) ++high_total;
    }
    const double n = static_cast<double>(diagonal_bonds) * seeds;
    const double mean = n * x;
    const double sigma = std::sqrt(n * x * (1.0 - x));
    CHECK(std::abs(high_total - mean) < 4.0 * sigma);
}
