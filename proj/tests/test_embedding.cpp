#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "chaincal/embedding.hpp"
#include "chaincal/rng.hpp"
#include "oracles.hpp"

using namespace chaincal;

TEST_CASE("sample_chains draws distinct sites with bounded lengths") {
    const ChainSet full = sample_chains(4, 16, 7);
    CHECK(full.chains.size() == 16);
    std::set<int> sites;
    for (const Chain& c : full.chains) {
        sites.insert(c.site);
        CHECK(c.length >= 1);
        CHECK(c.length <= 4);
    }
    CHECK(sites.size() == 16);

    CHECK_THROWS_AS(sample_chains(4, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_chains(4, 17, 1), std::invalid_argument);
}

TEST_CASE("sample_chains mean total matches the uniform-length law") {
    // 6 chains of uniform{1..4} lengths: mean total 6 * 2.5 = 15.
    const int draws = 4000;
    double sum = 0.0;
    for (int s = 0; s < draws; ++s)
        sum += sample_chains(4, 6, static_cast<std::uint64_t>(s)).total_qubits();
    CHECK(sum / draws == doctest::Approx(15.0).epsilon(0.01));
}

TEST_CASE("sample_chains_with_total hits the target exactly") {
    const ChainSet c18 = sample_chains_with_total(4, 18, 1000, 99);
    CHECK(c18.total_qubits() == 18);
    CHECK(c18.bond_count() == 18);

    // Unique maximal solution: every site chained at full length.
    const ChainSet cmax = sample_chains_with_total(4, 64, 1000, 5);
    CHECK(cmax.chains.size() == 16);
    for (const Chain& c : cmax.chains) CHECK(c.length == 4);

    CHECK_THROWS_AS(sample_chains_with_total(4, 65, 1000, 5), ChainSamplingError);
    CHECK_THROWS_AS(sample_chains_with_total(4, 0, 1000, 5), ChainSamplingError);
}

TEST_CASE("sample_chains_with_total matches the conditioned rejection law") {
    // L=2, target 3: two chains reach it via (1,2) or (2,1), three chains
    // via (1,1,1). Conditioning the uniform draw on the total weighs the
    // chain counts by P(sum=3 | k): 1/2 for k=2, 1/8 for k=3, giving
    // P(k=2) = 0.8.
    const int draws = 20000;
    int two_chains = 0;
    for (int s = 0; s < draws; ++s) {
        const ChainSet c = sample_chains_with_total(2, 3, 10, static_cast<std::uint64_t>(s));
        CHECK(c.total_qubits() == 3);
        if (c.chains.size() == 2) ++two_chains;
    }
    const double freq = static_cast<double>(two_chains) / draws;
    CHECK(std::abs(freq - 0.8) < 4.0 * std::sqrt(0.8 * 0.2 / draws));
}

TEST_CASE("embed lays out chain qubits contiguously in site order") {
    const ProblemGraph base = build_j1j2_lattice({4, 1.0, 0.46, Boundary::periodic});
    ChainSet chains;
    chains.chains = {{10, 2}, {3, 1}, {6, 3}};
    const EmbeddedProblem embedded = embed(base, chains, 1.5);

    CHECK(embedded.composite.num_qubits == 16 + 6);
    CHECK(embedded.chains.chains[0].site == 3);  // canonicalized order
    CHECK(embedded.chain_first[0] == 16);
    CHECK(embedded.chain_first[1] == 17);  // site 6, length 3
    CHECK(embedded.chain_first[2] == 20);  // site 10, length 2
    CHECK(embedded.chain_bonds.size() == 6);
    for (int q = 0; q < 16; ++q) CHECK(embedded.composite.roles[q] == QubitRole::lattice);
    for (int q = 16; q < 22; ++q) CHECK(embedded.composite.roles[q] == QubitRole::chain);

    CHECK_THROWS_AS(embed(base, chains, -0.5), std::invalid_argument);
}

TEST_CASE("composite energy of intact configurations separates") {
    const ProblemGraph base = build_j1j2_lattice({3, 1.0, 0.46, Boundary::periodic});
    ChainSet chains;
    chains.chains = {{0, 2}, {4, 1}, {7, 3}};
    Rng rng(11);
    for (double jc : {0.0, 0.7, 1.5, 3.0}) {
        const EmbeddedProblem embedded = embed(base, chains, jc);
        for (int trial = 0; trial < 20; ++trial) {
            const SpinConfig s = testing::random_config(rng, 9);
            const SpinConfig full = extend_config(s, embedded);
            CHECK(energy(embedded.composite, full) ==
                  doctest::Approx(energy(base, s) - jc * 6).epsilon(1e-12));
        }
    }
}

TEST_CASE("single chain contributes -length * jc when aligned") {
    const ProblemGraph base = build_j1j2_lattice({4, 1.0, 0.46, Boundary::periodic});
    ChainSet chains;
    chains.chains = {{0, 2}};
    const EmbeddedProblem embedded = embed(base, chains, 1.5);
    const SpinConfig up(18, 1);
    const SpinConfig lattice_up(16, 1);
    CHECK(energy(embedded.composite, up) ==
          doctest::Approx(energy(base, lattice_up) - 3.0).epsilon(1e-12));
}

TEST_CASE("decode counts broken chains and applies the policy") {
    const ProblemGraph base = build_j1j2_lattice({4, 1.0, 0.46, Boundary::periodic});
    ChainSet chains;
    chains.chains = {{5, 3}};
    const EmbeddedProblem embedded = embed(base, chains, 2.0);

    SpinConfig config(19, 1);
    auto result = decode(config, embedded, DecodePolicy::strict);
    CHECK(result.broken_chains == 0);
    CHECK(result.lattice_config == SpinConfig(16, 1));

    // chain fully disagrees with its site: majority flips, strict keeps
    for (int q = 16; q < 19; ++q) config[q] = -1;
    result = decode(config, embedded, DecodePolicy::strict);
    CHECK(result.broken_chains == 1);
    CHECK(result.lattice_config[5] == 1);
    result = decode(config, embedded, DecodePolicy::majority);
    CHECK(result.broken_chains == 1);
    CHECK(result.lattice_config[5] == -1);

    // 2-2 tie goes to the lattice qubit's value
    config[16] = 1;
    result = decode(config, embedded, DecodePolicy::majority);
    CHECK(result.broken_chains == 1);
    CHECK(result.lattice_config[5] == 1);

    // a global flip leaves brokenness unchanged
    SpinConfig flipped = config;
    for (auto& v : flipped) v = static_cast<std::int8_t>(-v);
    CHECK(decode(flipped, embedded, DecodePolicy::strict).broken_chains == 1);

    CHECK_THROWS_AS(decode(SpinConfig(5, 1), embedded, DecodePolicy::strict),
                    std::invalid_argument);
}

TEST_CASE("decode inverts extend_config for any lattice configuration") {
    const ProblemGraph base = build_j1j2_lattice({3, 1.0, 0.42, Boundary::periodic});
    const ChainSet chains = sample_chains(3, 5, 321);
    const EmbeddedProblem embedded = embed(base, chains, 1.1);
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const SpinConfig s = testing::random_config(rng, 9);
        const SpinConfig full = extend_config(s, embedded);
        for (DecodePolicy policy : {DecodePolicy::strict, DecodePolicy::majority}) {
            const auto result = decode(full, embedded, policy);
            CHECK(result.broken_chains == 0);
            CHECK(result.lattice_config == s);
        }
    }
}

TEST_CASE("total_ground_energy bookkeeping") {
    const ProblemGraph base = build_j1j2_lattice({4, 1.0, 0.46, Boundary::periodic});
    ChainSet chains;
    chains.chains = {{0, 4}, {3, 2}, {9, 3}};  // N_c = 9
    CHECK(total_ground_energy(embed(base, chains, 0.0), -1.08) ==
          doctest::Approx(-17.28).epsilon(1e-12));
    CHECK(total_ground_energy(embed(base, chains, 2.0), -1.08) ==
          doctest::Approx(-17.28 - 18.0).epsilon(1e-12));
}

TEST_CASE("chain set validation") {
    ChainSet bad_site;
    bad_site.chains = {{16, 1}};
    CHECK_THROWS_AS(bad_site.validate(4), std::invalid_argument);

    ChainSet bad_length;
    bad_length.chains = {{0, 5}};
    CHECK_THROWS_AS(bad_length.validate(4), std::invalid_argument);

    ChainSet duplicate;
    duplicate.chains = {{0, 1}, {0, 2}};
    CHECK_THROWS_AS(duplicate.validate(4), std::invalid_argument);
}
