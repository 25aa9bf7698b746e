// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Vaccinee selection: random (rv), acquaintance (av), degree (dv) and
// individual's movement (imv).
#pragma once

#include "vaxsim/contact_network.hpp"
#include "vaxsim/location_model.hpp"

#include <random>
#include <string_view>
#include <vector>

namespace vaxsim {

enum class StrategyKind { Random, Acquaintance, Degree, Movement };

std::string_view to_string(StrategyKind kind) noexcept;
/// Accepts rv, av, dv, imv.
StrategyKind parse_strategy(std::string_view name);

struct VaccinationBudget
{
    double rate_percent = 0.0;
    std::size_t count = 0;

    /// count = floor(P * N / 100)
    static VaccinationBudget from_rate(double rate_percent, std::size_t node_count);
};

/// Sorted ascending, no duplicates.
using NodeSet = std::vector<NodeId>;

NodeSet select_random(std::size_t node_count, const VaccinationBudget& budget, std::mt19937_64& rng);

/// Runs `nominations` trials; each picks a node with at least one contact in
/// the window and one of its distinct contacts, who gains a nomination. The
/// most-nominated nodes are vaccinated, ties to the lower id.
NodeSet select_acquaintance(const TemporalNetwork& net, const VaccinationBudget& budget,
                            std::int32_t window_days, std::size_t nominations, std::mt19937_64& rng);

NodeSet select_degree(const TemporalNetwork& net, const VaccinationBudget& budget, std::int32_t window_days);

NodeSet select_movement(const VisitLog& visits, RankingBeta beta, const VaccinationBudget& budget,
                        const ClassBounds& bounds = ClassBounds::standard());

/// Top `count` indices by score descending, ties to the lower index; the
/// result is sorted ascending.
template <class Score>
NodeSet top_by_score(const std::vector<Score>& scores, std::size_t count);

} // namespace vaxsim
