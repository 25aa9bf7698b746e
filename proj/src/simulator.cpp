// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "vaxsim/simulator.hpp"

#include "vaxsim/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace vaxsim {

VaccinationMask make_mask(std::size_t node_count, const NodeSet& vaccinated)
{
    VaccinationMask mask(node_count, 0);
    for (auto v : vaccinated) {
        require(v < node_count, "vaccinated node id out of range");
        mask[v] = 1;
    }
    return mask;
}

NodeId draw_seed_node(const ReplicationStreams& streams, const VaccinationMask& vaccinated)
{
    require(!vaccinated.empty(), "empty population");
    require(std::find(vaccinated.begin(), vaccinated.end(), std::uint8_t{0}) != vaccinated.end(),
            "all nodes are vaccinated");
    auto rng = streams.seed_stream();
    const auto n = static_cast<double>(vaccinated.size());
    while (true) {
        const auto v = static_cast<NodeId>(std::min(to_unit(rng()) * n, n - 1.0));
        if (vaccinated[v] == 0) {
            return v;
        }
    }
}

namespace {

// Pending link of one infectious host; the heap orders cursors by global
// link index, which reproduces a single pass over the link stream while
// touching only links hosted by infected nodes.
struct Cursor
{
    LinkIndex link;
    NodeId host;
    std::uint32_t position; // into out_links(host)
    std::int32_t stop_day;  // first day the host no longer transmits

    bool operator>(const Cursor& other) const noexcept { return link > other.link; }
};

template <bool kTrace>
std::size_t propagate(const TemporalNetwork& net, const DiseaseParams& params, const VaccinationMask& vaccinated,
                      NodeId seed, PropagationWindow window, const ReplicationStreams& streams,
                      std::vector<InfectionEvent>* events)
{
    const auto n = net.node_count();
    require(vaccinated.size() == n, "vaccination mask does not match the population");
    require(seed < n, "seed node out of range");
    require(vaccinated[seed] == 0, "seed node is vaccinated");
    require(window.start_day >= 0 && window.horizon_days >= 1, "invalid propagation window");

    HealthTimeline timeline(n);
    for (NodeId v = 0; v < n; ++v) {
        if (vaccinated[v] != 0) {
            timeline.vaccinate(v);
        }
    }
    const auto end_day = window.end_day();
    std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> pending;

    auto activate = [&](NodeId node, std::size_t first_link, const InfectionSchedule& s) {
        const auto stop_day = std::min(s.infectious_end, end_day);
        if (s.latent_end >= stop_day) {
            return;
        }
        const auto from = std::max(first_link, net.day_begin(s.latent_end));
        const auto outs = net.out_links(node);
        const auto it = std::lower_bound(outs.begin(), outs.end(), from);
        if (it != outs.end() && net.link(*it).day < stop_day) {
            pending.push({*it, node, static_cast<std::uint32_t>(it - outs.begin()), stop_day});
        }
    };

    {
        auto rng = streams.node_stream(seed);
        const auto s = schedule_infection(params, window.start_day, rng);
        timeline.infect(seed, s);
        if constexpr (kTrace) {
            events->push_back({seed, seed, -1, s});
        }
        activate(seed, net.day_begin(window.start_day), s);
    }

    const double sigma = params.sigma;
    while (!pending.empty()) {
        auto c = pending.top();
        pending.pop();
        const auto& l = net.link(c.link);
        if (timeline.is_susceptible(l.visitor) &&
            streams.link_uniform(c.link) < infection_probability_unchecked(sigma, l.exposure)) {
            auto rng = streams.node_stream(l.visitor);
            const auto s = schedule_infection(params, l.day, rng);
            timeline.infect(l.visitor, s);
            if constexpr (kTrace) {
                events->push_back({l.visitor, c.host, static_cast<std::int64_t>(c.link), s});
            }
            activate(l.visitor, std::size_t{c.link} + 1, s);
        }
        const auto outs = net.out_links(c.host);
        if (++c.position < outs.size()) {
            c.link = outs[c.position];
            if (net.link(c.link).day < c.stop_day) {
                pending.push(c);
            }
        }
    }
    return timeline.infected_count();
}

} // namespace

std::size_t run_single(const TemporalNetwork& net, const DiseaseParams& params, const VaccinationMask& vaccinated,
                       NodeId seed, PropagationWindow window, const ReplicationStreams& streams)
{
    return propagate<false>(net, params, vaccinated, seed, window, streams, nullptr);
}

std::vector<InfectionEvent> trace_single(const TemporalNetwork& net, const DiseaseParams& params,
                                         const VaccinationMask& vaccinated, NodeId seed, PropagationWindow window,
                                         const ReplicationStreams& streams)
{
    std::vector<InfectionEvent> events;
    propagate<true>(net, params, vaccinated, seed, window, streams, &events);
    return events;
}

void ExperimentConfig::validate() const
{
    require(rate_percent >= 0.0 && rate_percent <= 100.0, "rate_P must lie in [0, 100]");
    require(ranking_window_days >= 1, "ranking_window_days must be >= 1");
    require(horizon_days >= 1, "horizon_days must be >= 1");
    require(runs >= 1, "runs must be >= 1");
    require(target_r >= 0.0, "target_R must be >= 0");
    require(ranking_beta >= 0.0 && ranking_beta <= 1.0, "ranking_beta must lie in [0, 1]");
    require(class6_cap >= 101, "class-6 cap must be >= 101");
    require(nominations_per_node >= 1, "nominations_per_node must be >= 1");
}

NodeSet select_vaccinees(const ExperimentConfig& config, const TemporalNetwork& net, const LocationTable& locations)
{
    const auto budget = VaccinationBudget::from_rate(config.rate_percent, net.node_count());
    if (budget.count == 0) {
        return {};
    }
    const auto window = config.ranking_window_days;
    switch (config.strategy) {
    case StrategyKind::Random: {
        auto rng = make_engine(config.master_seed, "vaccinate/rv");
        return select_random(net.node_count(), budget, rng);
    }
    case StrategyKind::Acquaintance: {
        auto rng = make_engine(config.master_seed, "vaccinate/av");
        return select_acquaintance(net, budget, window, config.nominations_per_node * net.node_count(), rng);
    }
    case StrategyKind::Degree:
        return select_degree(net, budget, window);
    case StrategyKind::Movement:
        return select_movement(build_visit_log(net, locations, window), RankingBeta(config.ranking_beta), budget,
                               ClassBounds::standard(config.class6_cap));
    }
    fail(ErrorCode::Internal, "unhandled strategy");
}

ReplicationBatch run_replications(const TemporalNetwork& net, const DiseaseParams& params,
                                  const VaccinationMask& vaccinated, PropagationWindow window, std::size_t runs,
                                  std::uint64_t master_seed, unsigned workers)
{
    params.validate();
    require(vaccinated.size() == net.node_count(), "vaccination mask does not match the population");
    if (std::find(vaccinated.begin(), vaccinated.end(), std::uint8_t{0}) == vaccinated.end()) {
        fail(ErrorCode::InvalidArgument, "all nodes are vaccinated");
    }
    ReplicationBatch batch;
    batch.seeds.resize(runs);
    batch.sizes.resize(runs);
    detail::parallel_for(runs, workers, [&](std::size_t r, unsigned) {
        const ReplicationStreams streams(master_seed, r);
        const auto seed = draw_seed_node(streams, vaccinated);
        batch.seeds[r] = seed;
        batch.sizes[r] = run_single(net, params, vaccinated, seed, window, streams);
    });
    return batch;
}

double mean_of(std::span<const std::size_t> sizes)
{
    if (sizes.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (auto s : sizes) {
        total += static_cast<double>(s);
    }
    return total / static_cast<double>(sizes.size());
}

double sample_sd(std::span<const std::size_t> sizes)
{
    if (sizes.size() < 2) {
        return 0.0;
    }
    const double mean = mean_of(sizes);
    double ss = 0.0;
    for (auto s : sizes) {
        ss += (static_cast<double>(s) - mean) * (static_cast<double>(s) - mean);
    }
    return std::sqrt(ss / static_cast<double>(sizes.size() - 1));
}

double efficiency(double mean_size, double baseline_mean)
{
    require(baseline_mean > 0.0, "efficiency: baseline mean outbreak size must be > 0");
    return (baseline_mean - mean_size) / baseline_mean;
}

ExperimentResult summarize(const ExperimentConfig& config, std::size_t vaccinated, ReplicationBatch batch,
                           double baseline_mean)
{
    ExperimentResult result;
    result.strategy = config.strategy;
    result.rate_percent = config.rate_percent;
    result.target_r = config.target_r;
    result.vaccinated = vaccinated;
    result.mean_size = mean_of(batch.sizes);
    result.sd = sample_sd(batch.sizes);
    result.baseline_mean = baseline_mean;
    result.efficiency = efficiency(result.mean_size, baseline_mean);
    result.runs = batch.sizes.size();
    result.seeds = std::move(batch.seeds);
    result.sizes = std::move(batch.sizes);
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const TemporalNetwork& net,
                                const LocationTable& locations, const DiseaseParams& params,
                                std::optional<double> baseline_mean)
{
    config.validate();
    const auto vaccinees = select_vaccinees(config, net, locations);
    if (vaccinees.size() >= net.node_count()) {
        fail(ErrorCode::InvalidArgument, "all nodes would be vaccinated");
    }
    const auto window = config.window();
    if (!baseline_mean) {
        const VaccinationMask none(net.node_count(), 0);
        baseline_mean = mean_of(
            run_replications(net, params, none, window, config.runs, config.master_seed, config.workers).sizes);
    }
    auto batch = run_replications(net, params, make_mask(net.node_count(), vaccinees), window, config.runs,
                                  config.master_seed, config.workers);
    return summarize(config, vaccinees.size(), std::move(batch), *baseline_mean);
}

double scaled_threshold(double threshold, std::size_t node_count, double paper_population)
{
    require(threshold > 0.0, "threshold must be > 0");
    require(paper_population > 0.0, "paper population must be > 0");
    return threshold * static_cast<double>(node_count) / paper_population;
}

ThresholdResult threshold_from_curve(std::vector<std::pair<double, double>> curve, double threshold)
{
    require(threshold > 0.0, "threshold must be > 0");
    require(std::is_sorted(curve.begin(), curve.end()), "rate grid must be ascending");
    ThresholdResult result;
    result.threshold = threshold;
    for (const auto& [rate, size] : curve) {
        if (size < threshold) {
            result.rate_percent = rate;
            break;
        }
    }
    result.curve = std::move(curve);
    return result;
}

ThresholdResult threshold_rate(const ExperimentConfig& config_template, const TemporalNetwork& net,
                               const LocationTable& locations, const DiseaseParams& params,
                               std::span<const double> rate_grid, double threshold)
{
    require(!rate_grid.empty(), "rate grid is empty");
    require(std::is_sorted(rate_grid.begin(), rate_grid.end()), "rate grid must be ascending");
    std::vector<std::pair<double, double>> curve;
    curve.reserve(rate_grid.size());
    for (double rate : rate_grid) {
        auto config = config_template;
        config.rate_percent = rate;
        config.validate();
        const auto vaccinees = select_vaccinees(config, net, locations);
        if (vaccinees.size() >= net.node_count()) {
            fail(ErrorCode::InvalidArgument, "rate grid point vaccinates every node");
        }
        const auto batch = run_replications(net, params, make_mask(net.node_count(), vaccinees), config.window(),
                                            config.runs, config.master_seed, config.workers);
        curve.emplace_back(rate, mean_of(batch.sizes));
    }
    return threshold_from_curve(std::move(curve), threshold);
}

} // namespace vaxsim
