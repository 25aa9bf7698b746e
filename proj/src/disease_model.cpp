// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "vaxsim/disease_model.hpp"

#include "vaxsim/error.hpp"
#include "vaxsim/random.hpp"
#include "vaxsim/simulator.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vaxsim {

void DiseaseParams::validate() const
{
    require(sigma >= 0.0 && std::isfinite(sigma), "sigma must be >= 0");
    require(incubation_log_sd > 0.0, "incubation_log_sd must be > 0");
    require(std::isfinite(incubation_log_mean), "incubation_log_mean must be finite");
    require(latent_offset_days >= 0, "latent_offset_days must be >= 0");
    require(infectious_duration_days > 0, "infectious_duration_days must be > 0");
}

double infection_probability(const DiseaseParams& params, double exposure_seconds)
{
    require(exposure_seconds >= 0.0, "exposure must be >= 0");
    require(params.sigma >= 0.0, "sigma must be >= 0");
    return infection_probability_unchecked(params.sigma, exposure_seconds);
}

InfectionSchedule schedule_from_incubation(const DiseaseParams& params, std::int32_t infection_day,
                                           double incubation_days)
{
    const auto latent = std::max<long>(0, std::lround(incubation_days - params.latent_offset_days));
    InfectionSchedule s;
    s.infection_day = infection_day;
    s.latent_end = infection_day + static_cast<std::int32_t>(latent);
    s.infectious_end = s.latent_end + params.infectious_duration_days;
    return s;
}

HealthTimeline::HealthTimeline(std::size_t node_count) : vaccinated_(node_count, 0), schedules_(node_count) {}

void HealthTimeline::vaccinate(NodeId node)
{
    require(node < node_count(), "node id out of range");
    require(!ever_infected(node), "cannot vaccinate an infected node");
    vaccinated_[node] = 1;
}

void HealthTimeline::infect(NodeId node, const InfectionSchedule& schedule)
{
    require(node < node_count(), "node id out of range");
    require(is_susceptible(node), "only susceptible nodes can be infected");
    require(schedule.infection_day >= 0 && schedule.latent_end >= schedule.infection_day &&
                schedule.infectious_end > schedule.latent_end,
            "invalid infection schedule");
    schedules_[node] = schedule;
    ++infected_;
}

HealthState HealthTimeline::state(NodeId node, std::int32_t day) const noexcept
{
    if (is_vaccinated(node)) {
        return HealthState::Vaccinated;
    }
    const auto& s = schedules_[node];
    if (!ever_infected(node) || day < s.infection_day) {
        return HealthState::Susceptible;
    }
    if (day < s.latent_end) {
        return HealthState::Latent;
    }
    if (day < s.infectious_end) {
        return HealthState::Infectious;
    }
    return HealthState::Recovered;
}

double empirical_reproduction(const TemporalNetwork& net, const DiseaseParams& params,
                              const CalibrationSettings& settings)
{
    params.validate();
    require(settings.runs >= 1, "calibration runs must be >= 1");
    require(net.node_count() >= 2, "network needs at least two nodes");
    const VaccinationMask none(net.node_count(), 0);
    const PropagationWindow window{settings.start_day, settings.horizon_days};
    const auto workers = std::max(1u, settings.workers);

    std::vector<std::size_t> counts(settings.runs, 0);
    // Stamp arrays mark visitors already infected in the current draw.
    std::vector<std::vector<std::size_t>> stamps(workers, std::vector<std::size_t>(net.node_count(), 0));
    detail::parallel_for(settings.runs, workers, [&](std::size_t d, unsigned worker) {
        auto& stamp = stamps[worker];
        const ReplicationStreams streams(settings.seed, d);
        const auto seed = draw_seed_node(streams, none);
        auto rng = streams.node_stream(seed);
        const auto s = schedule_infection(params, window.start_day, rng);
        const auto stop_day = std::min(s.infectious_end, window.end_day());
        if (s.latent_end >= stop_day) {
            return;
        }
        const auto first = net.day_begin(s.latent_end);
        const auto last = net.day_begin(stop_day);
        const auto outs = net.out_links(seed);
        std::size_t infected = 0;
        for (auto it = std::lower_bound(outs.begin(), outs.end(), first); it != outs.end() && *it < last; ++it) {
            const auto& l = net.link(*it);
            if (stamp[l.visitor] == d + 1) {
                continue;
            }
            if (streams.link_uniform(*it) < infection_probability_unchecked(params.sigma, l.exposure)) {
                stamp[l.visitor] = d + 1;
                ++infected;
            }
        }
        counts[d] = infected;
    });
    return mean_of(counts);
}

CalibrationResult calibrate_sigma(const TemporalNetwork& net, double target_r, const CalibrationSettings& settings,
                                  const DiseaseParams& base)
{
    require(target_r >= 0.0 && std::isfinite(target_r), "target R must be >= 0");
    require(settings.sigma_lo >= 0.0 && settings.sigma_hi > settings.sigma_lo, "invalid sigma bracket");
    require(settings.max_iters >= 1, "max_iters must be >= 1");
    require(settings.tolerance > 0.0, "tolerance must be > 0");

    auto params = base;
    auto measure = [&](double sigma) {
        params.sigma = sigma;
        return empirical_reproduction(net, params, settings);
    };

    CalibrationResult result;
    if (target_r == 0.0 && settings.sigma_lo == 0.0) {
        result.sigma = 0.0;
        result.empirical_r = 0.0;
        return result;
    }

    double lo = settings.sigma_lo;
    double hi = settings.sigma_hi;
    double r_lo = measure(lo);
    double r_hi = measure(hi);
    int iterations = 2;
    if (target_r < r_lo || target_r > r_hi) {
        std::ostringstream msg;
        msg << "target R " << target_r << " unreachable: empirical R over sigma in [" << lo << ", " << hi
            << "] spans [" << r_lo << ", " << r_hi << "]";
        fail(ErrorCode::Unreachable, msg.str());
    }
    // Invariant: r_lo <= target <= r_hi.
    while (iterations < settings.max_iters && r_lo != target_r && r_hi != target_r && hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double r = measure(mid);
        ++iterations;
        if (r < target_r) {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
            r_hi = r;
        }
    }
    result.iterations = iterations;
    result.sigma_below = lo;
    result.r_below = r_lo;
    result.sigma_above = hi;
    result.r_above = r_hi;
    if (target_r - r_lo < r_hi - target_r) {
        result.sigma = lo;
        result.empirical_r = r_lo;
    } else {
        result.sigma = hi;
        result.empirical_r = r_hi;
    }
    if (std::abs(result.empirical_r - target_r) > settings.tolerance) {
        std::ostringstream msg;
        msg << "calibration for target R " << target_r << " stalled at empirical R " << result.empirical_r
            << " (tolerance " << settings.tolerance << ")";
        fail(ErrorCode::Unreachable, msg.str());
    }
    return result;
}

} // namespace vaxsim
