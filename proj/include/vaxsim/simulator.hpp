// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pre-emptive vaccination experiments: vaccinate once, then replicate
// seed-and-propagate runs over the time-ordered link stream.
#pragma once

#include "vaxsim/contact_network.hpp"
#include "vaxsim/disease_model.hpp"
#include "vaxsim/location_model.hpp"
#include "vaxsim/random.hpp"
#include "vaxsim/strategies.hpp"

#include <optional>
#include <span>
#include <vector>

namespace vaxsim {

/// Days [0, ranking_days) feed the strategies; propagation covers
/// [start_day, start_day + horizon_days).
struct PropagationWindow
{
    std::int32_t start_day = 7;
    std::int32_t horizon_days = 25;

    std::int32_t end_day() const noexcept { return start_day + horizon_days; }
};

/// One byte per node, nonzero = vaccinated.
using VaccinationMask = std::vector<std::uint8_t>;

VaccinationMask make_mask(std::size_t node_count, const NodeSet& vaccinated);

/// Uniform over unvaccinated nodes, by rejection on the replication's seed
/// stream so the same run index picks the same seed whenever it is eligible.
NodeId draw_seed_node(const ReplicationStreams& streams, const VaccinationMask& vaccinated);

struct InfectionEvent
{
    NodeId node = 0;
    NodeId infector = 0;            ///< == node for the seed
    std::int64_t link = -1;         ///< infecting link index, -1 for the seed
    InfectionSchedule schedule;
};

/// Seeds `seed` at window.start_day and propagates. A link transmits when
/// its host is infectious on the link's day, its visitor is susceptible and
/// the link's replication uniform is below infection_probability(exposure).
/// Returns the number of nodes ever infected, seed included.
std::size_t run_single(const TemporalNetwork& net, const DiseaseParams& params, const VaccinationMask& vaccinated,
                       NodeId seed, PropagationWindow window, const ReplicationStreams& streams);

/// As run_single, returning every infection in causal order.
std::vector<InfectionEvent> trace_single(const TemporalNetwork& net, const DiseaseParams& params,
                                         const VaccinationMask& vaccinated, NodeId seed, PropagationWindow window,
                                         const ReplicationStreams& streams);

struct ExperimentConfig
{
    StrategyKind strategy = StrategyKind::Random;
    double rate_percent = 0.0;
    std::int32_t ranking_window_days = 7;
    std::int32_t horizon_days = 25;
    std::size_t runs = 1000;
    double target_r = 1.0;
    std::uint64_t master_seed = 1;
    double densify_multiplier = 1.0; ///< applied by callers that load raw SPDT files
    double ranking_beta = 0.05;
    int class6_cap = kDefaultClass6Cap;
    std::size_t nominations_per_node = 1;
    unsigned workers = 1;

    PropagationWindow window() const noexcept { return {ranking_window_days, horizon_days}; }
    void validate() const;
};

/// Strategy dispatch over the ranking window. Randomized strategies draw from
/// a stream derived from (master_seed, strategy).
NodeSet select_vaccinees(const ExperimentConfig& config, const TemporalNetwork& net, const LocationTable& locations);

struct ReplicationBatch
{
    std::vector<NodeId> seeds;
    std::vector<std::size_t> sizes;
};

/// Runs `runs` replications with streams (master_seed, run_index).
ReplicationBatch run_replications(const TemporalNetwork& net, const DiseaseParams& params,
                                  const VaccinationMask& vaccinated, PropagationWindow window, std::size_t runs,
                                  std::uint64_t master_seed, unsigned workers);

struct ExperimentResult
{
    StrategyKind strategy = StrategyKind::Random;
    double rate_percent = 0.0;
    double target_r = 0.0;
    std::size_t vaccinated = 0;
    std::vector<NodeId> seeds;
    std::vector<std::size_t> sizes;
    double mean_size = 0.0;
    double sd = 0.0;
    double baseline_mean = 0.0;
    double efficiency = 0.0;
    std::size_t runs = 0;
};

double mean_of(std::span<const std::size_t> sizes);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double sample_sd(std::span<const std::size_t> sizes);

/// (S0 - S) / S0. Throws if S0 <= 0.
double efficiency(double mean_size, double baseline_mean);

/// Builds the result for a finished batch against a baseline mean.
ExperimentResult summarize(const ExperimentConfig& config, std::size_t vaccinated, ReplicationBatch batch,
                           double baseline_mean);

/// Full protocol for one cell. `baseline_mean`, when given, skips the
/// zero-vaccination baseline (it must come from the same master seed,
/// window and params).
ExperimentResult run_experiment(const ExperimentConfig& config, const TemporalNetwork& net,
                                const LocationTable& locations, const DiseaseParams& params,
                                std::optional<double> baseline_mean = std::nullopt);

/// Desk-scale threshold: 100 infections at `paper_population` rescaled to N.
double scaled_threshold(double threshold, std::size_t node_count, double paper_population);

struct ThresholdResult
{
    double threshold = 0.0;
    std::optional<double> rate_percent; ///< empty: no grid point reached it
    std::vector<std::pair<double, double>> curve; ///< (P, mean size), ascending P
};

/// Smallest P on the ascending grid with mean outbreak size < threshold.
ThresholdResult threshold_from_curve(std::vector<std::pair<double, double>> curve, double threshold);

ThresholdResult threshold_rate(const ExperimentConfig& config_template, const TemporalNetwork& net,
                               const LocationTable& locations, const DiseaseParams& params,
                               std::span<const double> rate_grid, double threshold);

} // namespace vaxsim
