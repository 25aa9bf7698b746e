// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include "vaxsim/disease_model.hpp"
#include "vaxsim/error.hpp"
#include "vaxsim/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace vaxsim;

namespace {

DiseaseParams with_sigma(double sigma)
{
    DiseaseParams p;
    p.sigma = sigma;
    return p;
}

// Direct infections by each draw's seed, by a scan over the whole stream.
double brute_force_r(const TemporalNetwork& net, const DiseaseParams& params, const CalibrationSettings& settings)
{
    const VaccinationMask none(net.node_count(), 0);
    double total = 0.0;
    for (std::size_t d = 0; d < settings.runs; ++d) {
        const ReplicationStreams streams(settings.seed, d);
        const auto seed = draw_seed_node(streams, none);
        auto rng = streams.node_stream(seed);
        const double x = sample_incubation(params, rng);
        const long latent = std::max(0L, std::lround(x - 3.0));
        const long alpha = settings.start_day + latent;
        const long end = std::min<long>(alpha + 11, settings.start_day + settings.horizon_days);
        std::set<NodeId> infected;
        for (LinkIndex i = 0; i < net.link_count(); ++i) {
            const auto& l = net.link(i);
            if (l.host != seed || l.day < alpha || l.day >= end || infected.count(l.visitor) != 0) {
                continue;
            }
            const double p = -std::expm1(-params.sigma * (l.exposure / 3600.0));
            if (streams.link_uniform(i) < p) {
                infected.insert(l.visitor);
            }
        }
        total += static_cast<double>(infected.size());
    }
    return total / static_cast<double>(settings.runs);
}

} // namespace

TEST_CASE("infection probability closed form")
{
    CHECK(infection_probability(with_sigma(1.0), 0.0) == 0.0);
    CHECK(infection_probability(with_sigma(1.0), 3600.0 * std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(infection_probability(with_sigma(1.0), 3600.0) - (1.0 - std::exp(-1.0))) < 1e-9);
    CHECK_THROWS_AS(infection_probability(with_sigma(1.0), -1.0), Error);
}

TEST_CASE("infection probability is increasing, bounded and additive in exposure")
{
    const auto p = with_sigma(0.7);
    double prev = -1.0;
    for (double e = 0.0; e <= 40000.0; e += 250.0) {
        const double v = infection_probability(p, e);
        CHECK(v > prev);
        CHECK(v < 1.0);
        prev = v;
    }
    for (double e1 : {10.0, 900.0, 5000.0}) {
        for (double e2 : {1.0, 3600.0}) {
            const double joint = infection_probability(p, e1 + e2);
            const double split = 1.0 - (1.0 - infection_probability(p, e1)) * (1.0 - infection_probability(p, e2));
            CHECK(joint == doctest::Approx(split).epsilon(1e-12));
        }
    }
}

TEST_CASE("incubation degenerates to its median as the log-sd vanishes")
{
    DiseaseParams p;
    p.incubation_log_sd = 1e-12;
    SplitMix64 rng(3);
    CHECK(sample_incubation(p, rng) == doctest::Approx(std::exp(1.621)).epsilon(1e-9));
    CHECK(std::exp(1.621) == doctest::Approx(5.058).epsilon(1e-3));
}

TEST_CASE("incubation sampler moments")
{
    const DiseaseParams p;
    SplitMix64 rng(derive_key(17, std::string_view{"incubation"}));
    constexpr int kDraws = 1000000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const double y = std::log(sample_incubation(p, rng));
        sum += y;
        sum_sq += y * y;
    }
    const double mean = sum / kDraws;
    const double sd = std::sqrt((sum_sq - kDraws * mean * mean) / (kDraws - 1));
    CHECK(std::abs(mean - 1.621) < 0.002);
    CHECK(std::abs(sd - 0.418) < 0.002);
}

TEST_CASE("incubation sampling is reproducible")
{
    const DiseaseParams p;
    SplitMix64 a(99), b(99);
    CHECK(sample_incubation(p, a) == sample_incubation(p, b));
}

TEST_CASE("schedule offsets from incubation")
{
    const DiseaseParams p;
    const auto s = schedule_from_incubation(p, 10, 5.0);
    CHECK(s.infection_day == 10);
    CHECK(s.latent_end == 12);
    CHECK(s.infectious_end == 23);
    const auto short_incubation = schedule_from_incubation(p, 10, 2.0);
    CHECK(short_incubation.latent_end == 10);
    CHECK(short_incubation.infectious_end == 21);
}

TEST_CASE("sampled schedules match resampled latent periods")
{
    const DiseaseParams p;
    constexpr int kDraws = 100000;
    SplitMix64 rng(2026);
    double mean_latent = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const auto s = schedule_infection(p, 4, rng);
        CHECK(s.infectious_end - s.latent_end == 11);
        CHECK(s.latent_end >= s.infection_day);
        mean_latent += s.latent_end - s.infection_day;
    }
    mean_latent /= kDraws;
    // Independent resampling: Box-Muller on a different generator.
    std::mt19937_64 other(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double oracle = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const double z = std::sqrt(-2.0 * std::log(1.0 - unit(other))) * std::cos(2.0 * M_PI * unit(other));
        const double x = std::exp(1.621 + 0.418 * z);
        oracle += std::max(0.0, std::round(x - 3.0));
    }
    oracle /= kDraws;
    CHECK(mean_latent == doctest::Approx(oracle).epsilon(0.01));
}

TEST_CASE("health timeline transitions")
{
    HealthTimeline t(3);
    t.vaccinate(2);
    CHECK(t.state(2, 0) == HealthState::Vaccinated);
    CHECK_THROWS_AS(t.infect(2, {1, 2, 13}), Error);
    t.infect(0, {1, 2, 13});
    CHECK(t.state(0, 0) == HealthState::Susceptible);
    CHECK(t.state(0, 1) == HealthState::Latent);
    CHECK(t.state(0, 2) == HealthState::Infectious);
    CHECK(t.state(0, 12) == HealthState::Infectious);
    CHECK(t.state(0, 13) == HealthState::Recovered);
    CHECK_THROWS_AS(t.infect(0, {5, 5, 16}), Error);
    CHECK_THROWS_AS(t.vaccinate(0), Error);
    CHECK(t.infected_count() == 1);
    CHECK(t.is_susceptible(1));
    CHECK_FALSE(t.is_susceptible(0));
}

TEST_CASE("empirical R matches a brute-force scan and grows with sigma")
{
    const auto net = vaxsim::test::random_network(80, 6000, 32, 21);
    CalibrationSettings settings;
    settings.runs = 300;
    settings.seed = 5;
    double prev = -1.0;
    for (double sigma : {0.0, 0.05, 0.2, 0.5, 1.0, 3.0}) {
        const auto p = with_sigma(sigma);
        const double r = empirical_reproduction(net, p, settings);
        CHECK(r == doctest::Approx(brute_force_r(net, p, settings)).epsilon(1e-12));
        CHECK(r >= prev);
        prev = r;
    }
    settings.workers = 3;
    CHECK(empirical_reproduction(net, with_sigma(0.5), settings) ==
          empirical_reproduction(net, with_sigma(0.5), CalibrationSettings{300, 0.05, 0, 50, 60, 7, 25, 5, 1}));
}

TEST_CASE("calibration lands within tolerance and brackets the target")
{
    const auto synthetic = vaxsim::test::small_synthetic(1500, 4);
    CalibrationSettings settings;
    settings.runs = 4000;
    settings.seed = 11;
    const DiseaseParams base;
    for (double target : {1.0, 1.7}) {
        const auto result = calibrate_sigma(synthetic.network, target, settings, base);
        CHECK(std::abs(result.empirical_r - target) <= settings.tolerance);
        CHECK(result.iterations <= settings.max_iters);
        CHECK(result.sigma_below <= result.sigma_above);
        CHECK(result.r_below <= target);
        CHECK(result.r_above >= target);
        auto p = base;
        p.sigma = result.sigma;
        CHECK(empirical_reproduction(synthetic.network, p, settings) == result.empirical_r);
    }
    CHECK(calibrate_sigma(synthetic.network, 0.0, settings, base).sigma == 0.0);
}

TEST_CASE("unreachable calibration target reports the bracket")
{
    const auto net = vaxsim::test::random_network(40, 300, 32, 2);
    CalibrationSettings settings;
    settings.runs = 200;
    settings.sigma_hi = 0.01;
    try {
        calibrate_sigma(net, 5.0, settings, DiseaseParams{});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unreachable);
        CHECK(std::string(e.what()).find("spans") != std::string::npos);
    }
}
