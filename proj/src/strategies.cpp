// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "vaxsim/strategies.hpp"

#include "vaxsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vaxsim {

std::string_view to_string(StrategyKind kind) noexcept
{
    switch (kind) {
    case StrategyKind::Random:
        return "rv";
    case StrategyKind::Acquaintance:
        return "av";
    case StrategyKind::Degree:
        return "dv";
    case StrategyKind::Movement:
        return "imv";
    }
    return "?";
}

StrategyKind parse_strategy(std::string_view name)
{
    if (name == "rv") {
        return StrategyKind::Random;
    }
    if (name == "av") {
        return StrategyKind::Acquaintance;
    }
    if (name == "dv") {
        return StrategyKind::Degree;
    }
    if (name == "imv") {
        return StrategyKind::Movement;
    }
    fail(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(name) + "' (expected rv, av, dv or imv)");
}

VaccinationBudget VaccinationBudget::from_rate(double rate_percent, std::size_t node_count)
{
    require(rate_percent >= 0.0 && rate_percent <= 100.0, "vaccination rate must lie in [0, 100]");
    // The epsilon absorbs representation error in rates like 0.29.
    const auto count = static_cast<std::size_t>(std::floor(rate_percent * static_cast<double>(node_count) / 100.0 + 1e-9));
    return {rate_percent, std::min(count, node_count)};
}

template <class Score>
NodeSet top_by_score(const std::vector<Score>& scores, std::size_t count)
{
    require(count <= scores.size(), "budget exceeds the population");
    std::vector<NodeId> order(scores.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [&](NodeId a, NodeId b) { return scores[a] > scores[b] || (scores[a] == scores[b] && a < b); });
    order.resize(count);
    std::sort(order.begin(), order.end());
    return order;
}

template NodeSet top_by_score(const std::vector<double>&, std::size_t);
template NodeSet top_by_score(const std::vector<std::size_t>&, std::size_t);

NodeSet select_random(std::size_t node_count, const VaccinationBudget& budget, std::mt19937_64& rng)
{
    require(budget.count <= node_count, "budget exceeds the population");
    std::vector<NodeId> all(node_count);
    std::iota(all.begin(), all.end(), NodeId{0});
    NodeSet out;
    out.reserve(budget.count);
    std::sample(all.begin(), all.end(), std::back_inserter(out), budget.count, rng);
    return out;
}

NodeSet select_acquaintance(const TemporalNetwork& net, const VaccinationBudget& budget,
                            std::int32_t window_days, std::size_t nominations, std::mt19937_64& rng)
{
    require(window_days >= 1, "window_days must be >= 1");
    require(nominations >= 1, "acquaintance nominations must be >= 1");
    require(budget.count <= net.node_count(), "budget exceeds the population");
    if (budget.count == 0) {
        return {};
    }
    const WindowAdjacency adjacency(net, window_days);
    std::vector<NodeId> nominators;
    for (NodeId v = 0; v < adjacency.node_count(); ++v) {
        if (adjacency.degree(v) > 0) {
            nominators.push_back(v);
        }
    }
    if (nominators.empty()) {
        fail(ErrorCode::InvalidArgument, "acquaintance selection: no links in the ranking window");
    }
    std::vector<std::size_t> votes(net.node_count(), 0);
    std::uniform_int_distribution<std::size_t> pick_nominator(0, nominators.size() - 1);
    for (std::size_t q = 0; q < nominations; ++q) {
        const auto contacts = adjacency.neighbors(nominators[pick_nominator(rng)]);
        std::uniform_int_distribution<std::size_t> pick_contact(0, contacts.size() - 1);
        ++votes[contacts[pick_contact(rng)]];
    }
    return top_by_score(votes, budget.count);
}

NodeSet select_degree(const TemporalNetwork& net, const VaccinationBudget& budget, std::int32_t window_days)
{
    require(budget.count <= net.node_count(), "budget exceeds the population");
    const WindowAdjacency adjacency(net, window_days);
    std::vector<std::size_t> degrees(net.node_count());
    for (NodeId v = 0; v < degrees.size(); ++v) {
        degrees[v] = adjacency.degree(v);
    }
    return top_by_score(degrees, budget.count);
}

NodeSet select_movement(const VisitLog& visits, RankingBeta beta, const VaccinationBudget& budget,
                        const ClassBounds& bounds)
{
    require(budget.count <= visits.size(), "budget exceeds the population");
    const auto potentials = class_potentials(beta, bounds);
    std::vector<double> scores(visits.size());
    for (std::size_t v = 0; v < visits.size(); ++v) {
        scores[v] = ranking_score(visits[v], potentials);
    }
    return top_by_score(scores, budget.count);
}

} // namespace vaxsim
