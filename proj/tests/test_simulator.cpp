// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"
#include "reference_simulator.hpp"

#include "vaxsim/error.hpp"
#include "vaxsim/simulator.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace vaxsim;
using vaxsim::test::make_link;

namespace {

// Certain transmission on any positive exposure, no latency.
DiseaseParams certain()
{
    DiseaseParams p;
    p.sigma = 1e12;
    p.incubation_log_mean = -5.0;
    p.incubation_log_sd = 0.01;
    return p;
}

std::int64_t at(std::int32_t day, std::int64_t seconds)
{
    return std::int64_t{day} * kSecondsPerDay + seconds;
}

} // namespace

TEST_CASE("zero infectiousness leaves only the seed")
{
    const auto net = vaxsim::test::random_network(50, 3000, 32, 1);
    DiseaseParams p;
    p.sigma = 0.0;
    const VaccinationMask none(50, 0);
    for (std::uint64_t r = 0; r < 20; ++r) {
        const ReplicationStreams streams(1, r);
        CHECK(run_single(net, p, none, draw_seed_node(streams, none), {}, streams) == 1);
    }
}

TEST_CASE("fully vaccinated neighbourhood stops the outbreak")
{
    const auto net = vaxsim::test::random_network(50, 3000, 32, 1);
    VaccinationMask mask(50, 1);
    mask[13] = 0;
    const ReplicationStreams streams(1, 0);
    CHECK(draw_seed_node(streams, mask) == 13);
    CHECK(run_single(net, certain(), mask, 13, {}, streams) == 1);
    mask[13] = 1;
    CHECK_THROWS_AS(draw_seed_node(streams, mask), Error);
}

TEST_CASE("vaccinated seed is rejected")
{
    const auto net = vaxsim::test::random_network(10, 100, 32, 1);
    VaccinationMask mask(10, 0);
    mask[2] = 1;
    CHECK_THROWS_AS(run_single(net, certain(), mask, 2, {}, ReplicationStreams(1, 0)), Error);
}

TEST_CASE("a chain ordered in time infects every node")
{
    const TemporalNetwork chain(
        {make_link(0, 1, at(7, 100), 60), make_link(1, 2, at(7, 200), 60), make_link(2, 3, at(8, 50), 60)}, 4, 32);
    const VaccinationMask none(4, 0);
    const ReplicationStreams streams(3, 0);
    CHECK(run_single(chain, certain(), none, 0, {}, streams) == 4);

    // Reversing the order of the last two links breaks the chain.
    const TemporalNetwork broken(
        {make_link(0, 1, at(7, 100), 60), make_link(1, 2, at(8, 200), 60), make_link(2, 3, at(8, 50), 60)}, 4, 32);
    CHECK(run_single(broken, certain(), none, 0, {}, streams) == 3);

    // Links during the ranking window never transmit.
    const TemporalNetwork early({make_link(0, 1, at(6, 100), 60)}, 2, 32);
    CHECK(run_single(early, certain(), VaccinationMask(2, 0), 0, {}, streams) == 1);
}

TEST_CASE("latency delays onward transmission to the first infectious day")
{
    DiseaseParams p = certain();
    p.incubation_log_mean = std::log(6.0); // x = 6 -> latent 3 days
    p.incubation_log_sd = 1e-9;
    const TemporalNetwork net({make_link(0, 1, at(7, 100), 60), make_link(0, 2, at(9, 100), 60),
                               make_link(0, 3, at(10, 100), 60), make_link(0, 4, at(20, 100), 60),
                               make_link(0, 5, at(21, 100), 60)},
                              6, 32);
    const auto events = trace_single(net, p, VaccinationMask(6, 0), 0, {}, ReplicationStreams(1, 0));
    std::vector<NodeId> infected;
    for (const auto& e : events) {
        infected.push_back(e.node);
    }
    // Infectious on days [10, 21).
    CHECK(infected == std::vector<NodeId>{0, 3, 4});
}

TEST_CASE("propagation ends with the window")
{
    const TemporalNetwork net({make_link(0, 1, at(31, 100), 60), make_link(0, 2, at(32, 100), 60)}, 3, 40);
    DiseaseParams p = certain();
    p.infectious_duration_days = 30;
    CHECK(run_single(net, p, VaccinationMask(3, 0), 0, {7, 25}, ReplicationStreams(1, 0)) == 2);
    CHECK(run_single(net, p, VaccinationMask(3, 0), 0, {7, 26}, ReplicationStreams(1, 0)) == 3);
}

TEST_CASE("run_single matches the brute-force reference simulator")
{
    const auto synthetic = vaxsim::test::small_synthetic(200, 6);
    const auto& net = synthetic.network;
    std::mt19937_64 rng(4);
    for (double sigma : {0.5, 2.0, 8.0}) {
        DiseaseParams p;
        p.sigma = sigma;
        for (int trial = 0; trial < 3; ++trial) {
            const auto vaccinated = make_mask(200, select_random(200, {0.0, trial * 10u}, rng));
            for (std::uint64_t r = 0; r < 50; ++r) {
                const ReplicationStreams streams(99, r);
                const auto seed = draw_seed_node(streams, vaccinated);
                CHECK(run_single(net, p, vaccinated, seed, {7, 25}, streams) ==
                      vaxsim::test::reference_outbreak(net, p, vaccinated, seed, 7, 25, streams));
            }
        }
    }
}

TEST_CASE("trace respects causality and vaccination")
{
    const auto net = vaxsim::test::random_network(120, 20000, 32, 17);
    DiseaseParams p;
    p.sigma = 0.6;
    std::mt19937_64 rng(2);
    const auto vaccinated = make_mask(120, select_random(120, {0.0, 12}, rng));
    for (std::uint64_t r = 0; r < 30; ++r) {
        const ReplicationStreams streams(5, r);
        const auto seed = draw_seed_node(streams, vaccinated);
        const auto events = trace_single(net, p, vaccinated, seed, {7, 25}, streams);
        REQUIRE(!events.empty());
        CHECK(events.front().node == seed);
        CHECK(events.front().link == -1);
        CHECK(events.size() == run_single(net, p, vaccinated, seed, {7, 25}, streams));
        CHECK(events.size() <= 120 - 12);
        std::map<NodeId, const InfectionEvent*> by_node;
        std::int64_t last_link = -1;
        for (const auto& e : events) {
            CHECK(vaccinated[e.node] == 0);
            CHECK(by_node.count(e.node) == 0);
            CHECK(e.schedule.infectious_end - e.schedule.latent_end == 11);
            if (e.link >= 0) {
                const auto& l = net.link(static_cast<LinkIndex>(e.link));
                CHECK(l.host == e.infector);
                CHECK(l.visitor == e.node);
                CHECK(e.link > last_link);
                const auto* cause = by_node.at(e.infector);
                CHECK(cause->link < e.link);
                CHECK(l.day >= cause->schedule.latent_end);
                CHECK(l.day < cause->schedule.infectious_end);
                CHECK(l.day >= 7);
                CHECK(l.day < 32);
                CHECK(e.schedule.infection_day == l.day);
                last_link = e.link;
            }
            by_node[e.node] = &e;
        }
    }
}

TEST_CASE("efficiency arithmetic")
{
    CHECK(efficiency(3365.0, 3365.0) == 0.0);
    CHECK(efficiency(0.0, 3365.0) == 1.0);
    CHECK(std::abs(efficiency(2725.65, 3365.0) - 0.19) <= 0.001);
    CHECK_THROWS_AS(efficiency(1.0, 0.0), Error);
}

TEST_CASE("summary statistics")
{
    const std::vector<std::size_t> sizes{1, 2, 3, 4};
    CHECK(mean_of(sizes) == 2.5);
    CHECK(sample_sd(sizes) == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(sample_sd(std::vector<std::size_t>{7}) == 0.0);
}

TEST_CASE("threshold from a curve")
{
    CHECK(threshold_from_curve({{0, 2.0}, {1, 1.0}}, 3.0).rate_percent == 0.0);
    const auto crossing = threshold_from_curve({{0, 50.0}, {1, 20.0}, {2, 8.0}, {5, 1.0}}, 10.0);
    CHECK(crossing.rate_percent == 2.0);
    CHECK(crossing.curve.size() == 4);
    CHECK_FALSE(threshold_from_curve({{0, 50.0}, {1, 20.0}}, 10.0).rate_percent.has_value());
    CHECK(scaled_threshold(100, 10000, 360000) == doctest::Approx(2.7777777778));
}

TEST_CASE("experiments are deterministic and independent of worker count")
{
    const auto synthetic = vaxsim::test::small_synthetic(1000, 3);
    DiseaseParams p;
    p.sigma = 1.5;
    ExperimentConfig config;
    config.runs = 200;
    config.master_seed = 8;
    for (auto s : {StrategyKind::Random, StrategyKind::Acquaintance, StrategyKind::Degree, StrategyKind::Movement}) {
        config.strategy = s;
        config.rate_percent = 2.0;
        config.workers = 1;
        const auto a = run_experiment(config, synthetic.network, synthetic.locations, p);
        config.workers = 4;
        const auto b = run_experiment(config, synthetic.network, synthetic.locations, p);
        CHECK(a.sizes == b.sizes);
        CHECK(a.seeds == b.seeds);
        CHECK(a.mean_size == b.mean_size);
        CHECK(a.efficiency == b.efficiency);
        CHECK(a.vaccinated == 20);
        for (std::size_t r = 0; r < a.sizes.size(); ++r) {
            CHECK(a.sizes[r] >= 1);
            CHECK(a.sizes[r] <= 1000 - 20);
        }
        config.rate_percent = 0.0;
        const auto zero = run_experiment(config, synthetic.network, synthetic.locations, p);
        CHECK(zero.efficiency == 0.0);
        CHECK(zero.mean_size == zero.baseline_mean);
    }
    config.rate_percent = 100.0;
    CHECK_THROWS_AS(run_experiment(config, synthetic.network, synthetic.locations, p), Error);
}

TEST_CASE("mean outbreak size does not grow with the vaccination rate")
{
    const auto synthetic = vaxsim::test::small_synthetic(2000, 12);
    DiseaseParams p;
    p.sigma = 2.0;
    ExperimentConfig config;
    config.runs = 400;
    config.strategy = StrategyKind::Degree;
    double prev = 1e300;
    for (double rate : {0.0, 1.0, 2.0, 5.0, 10.0}) {
        config.rate_percent = rate;
        const auto result = run_experiment(config, synthetic.network, synthetic.locations, p);
        CHECK(result.mean_size <= prev);
        prev = result.mean_size;
    }
}
