// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Location classes by expected contact size and the movement-based ranking
// score built on them.
#pragma once

#include "vaxsim/contact_network.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace vaxsim {

inline constexpr int kClassCount = 6;
inline constexpr int kDefaultClass6Cap = 500;

/// Contact-size bounds of one location class.
struct LocationClass
{
    int index = 1; ///< 1..6
    int lower = 1;
    int upper = 5;
};

class ClassBounds
{
public:
    /// Contact sizes 1-5, 6-15, 16-25, 26-50, 51-100 and 101-`class6_cap`.
    static ClassBounds standard(int class6_cap = kDefaultClass6Cap);

    explicit ClassBounds(const std::array<LocationClass, kClassCount>& classes);

    const LocationClass& operator[](int index) const { return classes_.at(static_cast<std::size_t>(index - 1)); }
    const std::array<LocationClass, kClassCount>& classes() const noexcept { return classes_; }

private:
    std::array<LocationClass, kClassCount> classes_;
};

/// Per-contact transmission probability used only for ranking.
class RankingBeta
{
public:
    explicit RankingBeta(double beta);
    double value() const noexcept { return beta_; }

private:
    double beta_;
};

/// w = 1 - (1 - beta)^d
double visit_potential(RankingBeta beta, double contacts);

/// Mean of visit_potential at the two bounds of the class.
double class_potential(RankingBeta beta, const LocationClass& cls);

using VisitCounts = std::array<std::uint32_t, kClassCount>;
using ClassPotentials = std::array<double, kClassCount>;

ClassPotentials class_potentials(RankingBeta beta, const ClassBounds& bounds = ClassBounds::standard());

/// W = sum_i f_i * w_i
double ranking_score(const VisitCounts& f, const ClassPotentials& potentials) noexcept;
double ranking_score(const VisitCounts& f, RankingBeta beta,
                     const ClassBounds& bounds = ClassBounds::standard());

/// Maps a location id to its class index (1..6).
class LocationTable
{
public:
    void set(LocationId id, int class_index);
    bool contains(LocationId id) const noexcept;
    /// Throws if `id` is unknown.
    int class_of(LocationId id) const;
    std::size_t size() const noexcept { return count_; }
    /// Location ids with their class, ascending by id.
    std::vector<std::pair<LocationId, int>> entries() const;

private:
    std::vector<std::uint8_t> classes_; // 0 = absent
    std::size_t count_ = 0;
};

LocationTable parse_locations(std::istream& in, const std::string& source_name);
LocationTable load_locations(const std::filesystem::path& path);
void write_locations(std::ostream& out, const LocationTable& table);
void save_locations(const LocationTable& table, const std::filesystem::path& path);

/// f_i per node over links with day < window_days. Each link endpoint is one
/// visit event keyed by (node, location, start_time); repeated keys collapse.
using VisitLog = std::vector<VisitCounts>;
VisitLog build_visit_log(const TemporalNetwork& net, const LocationTable& locations,
                         std::int32_t window_days);

} // namespace vaxsim
