// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Transmission and timing: per-link infection probability, lognormal
// incubation, latent/infectious scheduling, and calibration of the
// infectiousness against a target reproduction number.
#pragma once

#include "vaxsim/contact_network.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace vaxsim {

struct DiseaseParams
{
    double sigma = 1.0;                ///< infectiousness per hour of exposure
    double incubation_log_mean = 1.621; ///< log-days
    double incubation_log_sd = 0.418;   ///< log-days
    int latent_offset_days = 3;         ///< latent period = incubation - offset
    int infectious_duration_days = 11;

    void validate() const;
};

/// P = 1 - exp(-sigma * E), E converted from seconds to hours.
double infection_probability(const DiseaseParams& params, double exposure_seconds);

/// Same as infection_probability without argument checks; callers guarantee
/// exposure >= 0.
inline double infection_probability_unchecked(double sigma, double exposure_seconds) noexcept
{
    return -std::expm1(-sigma * (exposure_seconds / 3600.0));
}

/// Incubation period in days, exp(Normal(log_mean, log_sd)).
template <class Urbg>
double sample_incubation(const DiseaseParams& params, Urbg& rng)
{
    std::normal_distribution<double> normal(params.incubation_log_mean, params.incubation_log_sd);
    return std::exp(normal(rng));
}

struct InfectionSchedule
{
    std::int32_t infection_day = 0;
    std::int32_t latent_end = 0;     ///< first infectious day
    std::int32_t infectious_end = 0; ///< first recovered day
};

/// Deterministic part of scheduling for a known incubation period.
InfectionSchedule schedule_from_incubation(const DiseaseParams& params, std::int32_t infection_day,
                                           double incubation_days);

template <class Urbg>
InfectionSchedule schedule_infection(const DiseaseParams& params, std::int32_t infection_day, Urbg& rng)
{
    return schedule_from_incubation(params, infection_day, sample_incubation(params, rng));
}

enum class HealthState : std::uint8_t { Susceptible, Vaccinated, Latent, Infectious, Recovered };

/// Per-run epidemic state of every node. States only move forward and
/// vaccination is absorbing; the state on a day is derived from the schedule.
class HealthTimeline
{
public:
    explicit HealthTimeline(std::size_t node_count);

    std::size_t node_count() const noexcept { return vaccinated_.size(); }

    void vaccinate(NodeId node);
    /// Throws unless `node` is susceptible.
    void infect(NodeId node, const InfectionSchedule& schedule);

    bool is_vaccinated(NodeId node) const noexcept { return vaccinated_[node] != 0; }
    bool ever_infected(NodeId node) const noexcept { return schedules_[node].infectious_end > 0; }
    bool is_susceptible(NodeId node) const noexcept { return !is_vaccinated(node) && !ever_infected(node); }
    bool is_infectious(NodeId node, std::int32_t day) const noexcept
    {
        const auto& s = schedules_[node];
        return day >= s.latent_end && day < s.infectious_end;
    }
    HealthState state(NodeId node, std::int32_t day) const noexcept;
    const InfectionSchedule& schedule(NodeId node) const noexcept { return schedules_[node]; }

    std::size_t infected_count() const noexcept { return infected_; }

private:
    std::vector<std::uint8_t> vaccinated_;
    std::vector<InfectionSchedule> schedules_; // infectious_end == 0 marks never infected
    std::size_t infected_ = 0;
};

struct CalibrationSettings
{
    std::size_t runs = 20000;   ///< seed draws per empirical-R evaluation
    double tolerance = 0.05;
    double sigma_lo = 0.0;
    double sigma_hi = 50.0;
    int max_iters = 60;
    std::int32_t start_day = 7;
    std::int32_t horizon_days = 25;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/// Mean number of direct infections caused by a uniformly drawn seed during
/// its infectious period in a fully susceptible population (within the
/// propagation window). Each draw uses the replication streams of
/// (settings.seed, draw index), so the estimate is monotone in sigma.
double empirical_reproduction(const TemporalNetwork& net, const DiseaseParams& params,
                              const CalibrationSettings& settings);

struct CalibrationResult
{
    double sigma = 0.0;
    double empirical_r = 0.0;
    int iterations = 0;
    // bracketing certificate: R(sigma_below) <= target <= R(sigma_above)
    double sigma_below = 0.0;
    double r_below = 0.0;
    double sigma_above = 0.0;
    double r_above = 0.0;
};

/// Bisection on sigma for a target empirical R. Throws ErrorCode::Unreachable
/// if the target lies outside R(sigma_lo)..R(sigma_hi), or if the closest
/// estimate found misses the target by more than the tolerance.
CalibrationResult calibrate_sigma(const TemporalNetwork& net, double target_r, const CalibrationSettings& settings,
                                  const DiseaseParams& base = {});

} // namespace vaxsim
