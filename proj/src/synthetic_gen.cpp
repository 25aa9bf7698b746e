// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "vaxsim/synthetic_gen.hpp"

#include "vaxsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace vaxsim {

double compute_exposure(Interval host, Interval visitor, double decay_rate_per_second)
{
    require(host.end >= host.start && visitor.end >= visitor.start, "interval end precedes start");
    require(decay_rate_per_second > 0.0, "decay rate must be > 0");
    if (visitor.end <= host.start) {
        return 0.0;
    }
    const double overlap = std::max(0.0, std::min(host.end, visitor.end) - std::max(host.start, visitor.start));
    double residual = 0.0;
    const double from = std::max(host.end, visitor.start);
    if (visitor.end > from) {
        const double r = decay_rate_per_second;
        residual = (std::exp(-r * (from - host.end)) - std::exp(-r * (visitor.end - host.end))) / r;
    }
    return overlap + residual;
}

void GeneratorConfig::validate() const
{
    require(nodes >= 2, "generator: nodes must be >= 2");
    require(days >= 1, "generator: days must be >= 1");
    for (auto c : locations_per_class) {
        require(c >= 1, "generator: every class needs at least one location");
    }
    require(activity_exponent > 0.0, "generator: activity_exponent must be > 0");
    require(activity_min > 0.0 && activity_cap >= activity_min, "generator: require 0 < activity_min <= activity_cap");
    double total = 0.0;
    for (auto w : class_visit_weights) {
        require(w >= 0.0 && w <= 1.0, "generator: class_visit_weights must lie in [0, 1]");
        total += w;
    }
    require(std::abs(total - 1.0) < 1e-9, "generator: class_visit_weights must sum to 1");
    require(duration_median_minutes > 0.0 && duration_log_sd >= 0.0, "generator: invalid visit duration");
    require(indirect_fraction >= 0.0 && indirect_fraction <= 1.0, "generator: indirect_fraction must lie in [0, 1]");
    require(decay_rate_per_minute > 0.0, "generator: decay_rate must be > 0");
    require(indirect_window_minutes >= 0.0, "generator: indirect_window must be >= 0");
}

std::vector<ContactLink> links_from_visits(std::vector<Visit> visits, const GeneratorConfig& config,
                                           std::mt19937_64& rng)
{
    std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) {
        return std::tie(a.location, a.start, a.node, a.end) < std::tie(b.location, b.start, b.node, b.end);
    });
    const auto window = static_cast<std::int64_t>(std::llround(config.indirect_window_minutes * 60.0));
    const double decay = config.decay_rate_per_minute / 60.0;
    const std::int64_t horizon_end = std::int64_t{config.days} * kSecondsPerDay;
    std::bernoulli_distribution keep_indirect(config.indirect_fraction);

    std::vector<ContactLink> links;
    auto emit = [&](const Visit& host, const Visit& visitor) {
        const double e = compute_exposure({static_cast<double>(host.start), static_cast<double>(host.end)},
                                          {static_cast<double>(visitor.start), static_cast<double>(visitor.end)},
                                          decay);
        const auto start = std::max(host.start, visitor.start);
        if (e > 0.0 && start < horizon_end) {
            links.push_back({host.node, visitor.node, host.location, day_of(start), start, e});
        }
    };
    for (std::size_t i = 0; i < visits.size(); ++i) {
        const auto& a = visits[i];
        for (std::size_t j = i + 1; j < visits.size(); ++j) {
            const auto& b = visits[j];
            if (b.location != a.location || b.start >= a.end + window) {
                break;
            }
            if (b.node == a.node) {
                continue;
            }
            if (b.start >= a.end && !keep_indirect(rng)) {
                continue;
            }
            emit(a, b);
            emit(b, a);
        }
    }
    return links;
}

SyntheticNetwork generate(const GeneratorConfig& config, std::mt19937_64& rng)
{
    config.validate();
    SyntheticNetwork out;
    std::array<LocationId, kClassCount> first_location{};
    LocationId next = 0;
    for (int c = 0; c < kClassCount; ++c) {
        first_location[static_cast<std::size_t>(c)] = next;
        for (std::size_t k = 0; k < config.locations_per_class[static_cast<std::size_t>(c)]; ++k) {
            out.locations.set(next++, c + 1);
        }
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> activity(config.nodes);
    for (auto& a : activity) {
        a = std::min(config.activity_cap,
                     config.activity_min * std::pow(1.0 - unit(rng), -1.0 / config.activity_exponent));
    }

    std::discrete_distribution<int> pick_class(config.class_visit_weights.begin(), config.class_visit_weights.end());
    std::uniform_int_distribution<std::int64_t> pick_time(0, kSecondsPerDay - 1);
    std::normal_distribution<double> log_duration(std::log(config.duration_median_minutes * 60.0),
                                                  config.duration_log_sd);
    std::vector<Visit> visits;
    for (NodeId v = 0; v < config.nodes; ++v) {
        std::poisson_distribution<int> visits_per_day(activity[v]);
        for (std::int32_t d = 0; d < config.days; ++d) {
            const int k = visits_per_day(rng);
            for (int i = 0; i < k; ++i) {
                const auto cls = static_cast<std::size_t>(pick_class(rng));
                std::uniform_int_distribution<std::size_t> pick_location(0, config.locations_per_class[cls] - 1);
                const auto location = first_location[cls] + static_cast<LocationId>(pick_location(rng));
                const auto start = std::int64_t{d} * kSecondsPerDay + pick_time(rng);
                const auto duration = std::max<std::int64_t>(60, std::llround(std::exp(log_duration(rng))));
                visits.push_back({v, location, start, start + duration});
            }
        }
    }

    auto links = links_from_visits(std::move(visits), config, rng);
    if (links.empty()) {
        fail(ErrorCode::InvalidArgument, "generator configuration produced no links");
    }
    out.network = TemporalNetwork(std::move(links), config.nodes, config.days);
    return out;
}

} // namespace vaxsim
