// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Temporal contact network: a time-ordered sequence of directed contact links
// (host exposes visitor at a location), with per-day and per-host indices.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace vaxsim {

using NodeId = std::uint32_t;
using LocationId = std::uint32_t;
using LinkIndex = std::uint32_t;

inline constexpr std::int64_t kSecondsPerDay = 86400;

constexpr std::int32_t day_of(std::int64_t start_time) noexcept
{
    return static_cast<std::int32_t>(start_time / kSecondsPerDay);
}

struct ContactLink
{
    NodeId host = 0;
    NodeId visitor = 0;
    LocationId location = 0;
    std::int32_t day = 0;
    std::int64_t start_time = 0; ///< seconds since the start of day 0
    double exposure = 0.0;       ///< seconds

    friend bool operator==(const ContactLink&, const ContactLink&) = default;
};

/// Canonical link order: start_time, then (host, visitor, location).
bool link_order(const ContactLink& a, const ContactLink& b) noexcept;

class TemporalNetwork
{
public:
    TemporalNetwork() = default;

    /// Validates and sorts `links`. The node count is at least one past the
    /// largest id referenced, and the horizon at least one past the last day.
    explicit TemporalNetwork(std::vector<ContactLink> links, std::size_t node_count = 0,
                             std::int32_t horizon_days = 0);

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t link_count() const noexcept { return links_.size(); }
    std::int32_t horizon_days() const noexcept { return horizon_days_; }

    std::span<const ContactLink> links() const noexcept { return links_; }
    const ContactLink& link(LinkIndex i) const noexcept { return links_[i]; }

    /// Index of the first link with day >= `day` (clamped to [0, link_count]).
    std::size_t day_begin(std::int32_t day) const noexcept;

    /// Links with from_day <= day < to_day, in stored order.
    std::span<const ContactLink> links_in_order(std::int32_t from_day, std::int32_t to_day) const;

    /// Global indices of the links hosted by `host`, ascending.
    std::span<const LinkIndex> out_links(NodeId host) const noexcept;

    friend bool operator==(const TemporalNetwork& a, const TemporalNetwork& b) noexcept
    {
        return a.node_count_ == b.node_count_ && a.horizon_days_ == b.horizon_days_ &&
               a.links_ == b.links_;
    }

private:
    void build_indices();

    std::vector<ContactLink> links_;
    std::size_t node_count_ = 0;
    std::int32_t horizon_days_ = 0;
    std::vector<std::size_t> day_offsets_; // horizon_days_ + 1 entries
    std::vector<std::size_t> out_offsets_; // node_count_ + 1 entries
    std::vector<LinkIndex> out_index_;
};

TemporalNetwork parse_network(std::istream& in, const std::string& source_name);
TemporalNetwork load_network(const std::filesystem::path& path);
void write_network(std::ostream& out, const TemporalNetwork& net);
void save_network(const TemporalNetwork& net, const std::filesystem::path& path);

/// DDT construction: appends copies of uniformly chosen links, each moved to
/// (day + offset) mod horizon with offset uniform in [0, horizon), until the
/// link count reaches round(multiplier * original). Originals are retained.
TemporalNetwork densify(const TemporalNetwork& net, double multiplier, std::mt19937_64& rng);

/// Distinct undirected neighbours of every node over links with day < window.
class WindowAdjacency
{
public:
    WindowAdjacency(const TemporalNetwork& net, std::int32_t window_days);

    std::size_t node_count() const noexcept { return offsets_.size() - 1; }
    std::span<const NodeId> neighbors(NodeId node) const noexcept;
    std::size_t degree(NodeId node) const noexcept { return neighbors(node).size(); }
    std::size_t link_count() const noexcept { return window_links_; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> neighbors_;
    std::size_t window_links_ = 0;
};

/// Number of distinct counterparts of `node` on links with day < window_days.
std::size_t degree(const TemporalNetwork& net, NodeId node, std::int32_t window_days);

/// Order-sensitive content hash, used to key cached calibrations.
std::uint64_t fingerprint(const TemporalNetwork& net);

} // namespace vaxsim
