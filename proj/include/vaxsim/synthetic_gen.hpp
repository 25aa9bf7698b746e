// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Synthetic same-place-different-time networks: nodes with heavy-tailed
// activity visit classed locations; co-located visits become direct links
// and visits shortly after a departure become decaying indirect links.
#pragma once

#include "vaxsim/contact_network.hpp"
#include "vaxsim/location_model.hpp"

#include <array>
#include <random>

namespace vaxsim {

struct Interval
{
    double start = 0.0; ///< seconds
    double end = 0.0;
};

/// Direct overlap plus the visitor's exposure to what the host left behind,
/// integral of exp(-rate * (t - host.end)) over the visitor's presence after
/// host.end. Zero when the visitor leaves before the host arrives.
double compute_exposure(Interval host, Interval visitor, double decay_rate_per_second);

struct GeneratorConfig
{
    std::size_t nodes = 10000;
    std::int32_t days = 32;
    std::array<std::size_t, kClassCount> locations_per_class{3000, 600, 150, 40, 12, 4};
    /// Per-node mean visits per day is Pareto with tail index
    /// activity_exponent (P(a > x) = (x / activity_min)^-exponent), truncated
    /// at activity_cap.
    double activity_exponent = 1.5;
    double activity_min = 0.45;
    double activity_cap = 200.0;
    std::array<double, kClassCount> class_visit_weights{0.40, 0.25, 0.15, 0.10, 0.06, 0.04};
    double duration_median_minutes = 30.0;
    double duration_log_sd = 0.75;
    /// Probability that a same-place-different-time pair becomes a link.
    double indirect_fraction = 0.3;
    double decay_rate_per_minute = 1.0 / 60.0;
    double indirect_window_minutes = 120.0;

    void validate() const;
};

struct SyntheticNetwork
{
    TemporalNetwork network;
    LocationTable locations;
};

SyntheticNetwork generate(const GeneratorConfig& config, std::mt19937_64& rng);

/// One stay of a node at a location; exposed for direct construction in
/// tests and tools.
struct Visit
{
    NodeId node = 0;
    LocationId location = 0;
    std::int64_t start = 0; ///< seconds
    std::int64_t end = 0;
};

/// Converts visits into links (the pairing step of `generate`). Indirect
/// pairs are kept with probability indirect_fraction using `rng`.
std::vector<ContactLink> links_from_visits(std::vector<Visit> visits, const GeneratorConfig& config,
                                           std::mt19937_64& rng);

} // namespace vaxsim
