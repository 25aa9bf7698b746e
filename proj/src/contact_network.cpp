// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "vaxsim/contact_network.hpp"

#include "vaxsim/error.hpp"
#include "vaxsim/random.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

namespace vaxsim {

bool link_order(const ContactLink& a, const ContactLink& b) noexcept
{
    return std::tie(a.start_time, a.host, a.visitor, a.location, a.exposure) <
           std::tie(b.start_time, b.host, b.visitor, b.location, b.exposure);
}

TemporalNetwork::TemporalNetwork(std::vector<ContactLink> links, std::size_t node_count,
                                 std::int32_t horizon_days)
    : links_(std::move(links)), node_count_(node_count), horizon_days_(horizon_days)
{
    require(links_.size() < std::numeric_limits<LinkIndex>::max(), "too many links");
    for (auto& l : links_) {
        require(l.host != l.visitor, "link host equals visitor");
        require(l.start_time >= 0, "link start_time is negative");
        require(l.exposure >= 0.0 && std::isfinite(l.exposure), "link exposure is negative");
        l.day = day_of(l.start_time);
        node_count_ = std::max<std::size_t>(node_count_, std::max(l.host, l.visitor) + std::size_t{1});
        horizon_days_ = std::max(horizon_days_, l.day + 1);
    }
    if (!std::is_sorted(links_.begin(), links_.end(), link_order)) {
        std::sort(links_.begin(), links_.end(), link_order);
    }
    build_indices();
}

void TemporalNetwork::build_indices()
{
    day_offsets_.assign(static_cast<std::size_t>(horizon_days_) + 1, 0);
    for (const auto& l : links_) {
        ++day_offsets_[static_cast<std::size_t>(l.day) + 1];
    }
    for (std::size_t d = 1; d < day_offsets_.size(); ++d) {
        day_offsets_[d] += day_offsets_[d - 1];
    }

    out_offsets_.assign(node_count_ + 1, 0);
    for (const auto& l : links_) {
        ++out_offsets_[l.host + 1];
    }
    for (std::size_t v = 1; v < out_offsets_.size(); ++v) {
        out_offsets_[v] += out_offsets_[v - 1];
    }
    out_index_.resize(links_.size());
    std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
    for (std::size_t i = 0; i < links_.size(); ++i) {
        out_index_[cursor[links_[i].host]++] = static_cast<LinkIndex>(i);
    }
}

std::size_t TemporalNetwork::day_begin(std::int32_t day) const noexcept
{
    if (day <= 0) {
        return 0;
    }
    if (day >= horizon_days_) {
        return links_.size();
    }
    return day_offsets_[static_cast<std::size_t>(day)];
}

std::span<const ContactLink> TemporalNetwork::links_in_order(std::int32_t from_day,
                                                             std::int32_t to_day) const
{
    require(from_day >= 0 && from_day <= to_day, "links_in_order: require 0 <= from_day <= to_day");
    const auto first = day_begin(from_day);
    const auto last = day_begin(to_day);
    return std::span<const ContactLink>(links_).subspan(first, last - first);
}

std::span<const LinkIndex> TemporalNetwork::out_links(NodeId host) const noexcept
{
    if (host >= node_count_) {
        return {};
    }
    return std::span<const LinkIndex>(out_index_)
        .subspan(out_offsets_[host], out_offsets_[host + 1] - out_offsets_[host]);
}

TemporalNetwork parse_network(std::istream& in, const std::string& source_name)
{
    std::vector<ContactLink> links;
    std::string line;
    std::size_t line_no = 0;
    std::array<std::string_view, 5> fields;
    auto bad = [&](const std::string& why) {
        fail(ErrorCode::Parse, source_name + ": line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = detail::trim(line);
        if (row.empty()) {
            continue;
        }
        const auto n = detail::split_csv(row, fields);
        if (links.empty() && line_no == 1 && n > 0 && !detail::looks_numeric(fields[0])) {
            continue; // header
        }
        if (n != fields.size()) {
            bad("expected 5 columns (host_id,visitor_id,start_time_seconds,exposure_seconds,"
                "location_id), found " + std::to_string(n));
        }
        ContactLink l;
        std::int64_t host = 0;
        std::int64_t visitor = 0;
        std::int64_t location = 0;
        if (!detail::parse_int(fields[0], host) || host < 0 || host > 0xfffffffeLL) {
            bad("invalid host_id '" + std::string(fields[0]) + "'");
        }
        if (!detail::parse_int(fields[1], visitor) || visitor < 0 || visitor > 0xfffffffeLL) {
            bad("invalid visitor_id '" + std::string(fields[1]) + "'");
        }
        if (!detail::parse_int(fields[2], l.start_time) || l.start_time < 0) {
            bad("invalid start_time_seconds '" + std::string(fields[2]) + "'");
        }
        if (!detail::parse_double(fields[3], l.exposure) || !std::isfinite(l.exposure)) {
            bad("invalid exposure_seconds '" + std::string(fields[3]) + "'");
        }
        if (l.exposure < 0.0) {
            bad("negative exposure");
        }
        if (!detail::parse_int(fields[4], location) || location < 0 || location > 0xfffffffeLL) {
            bad("invalid location_id '" + std::string(fields[4]) + "'");
        }
        if (host == visitor) {
            bad("host equals visitor (" + std::to_string(host) + ")");
        }
        l.host = static_cast<NodeId>(host);
        l.visitor = static_cast<NodeId>(visitor);
        l.location = static_cast<LocationId>(location);
        l.day = day_of(l.start_time);
        links.push_back(l);
    }
    if (links.empty()) {
        fail(ErrorCode::Parse, source_name + ": no links");
    }
    return TemporalNetwork(std::move(links));
}

TemporalNetwork load_network(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open link file " + path.string());
    }
    return parse_network(in, path.string());
}

void write_network(std::ostream& out, const TemporalNetwork& net)
{
    out << "host_id,visitor_id,start_time_seconds,exposure_seconds,location_id\n";
    std::string row;
    for (const auto& l : net.links()) {
        row.clear();
        row += std::to_string(l.host);
        row += ',';
        row += std::to_string(l.visitor);
        row += ',';
        row += std::to_string(l.start_time);
        row += ',';
        row += detail::shortest(l.exposure);
        row += ',';
        row += std::to_string(l.location);
        row += '\n';
        out << row;
    }
}

void save_network(const TemporalNetwork& net, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::Io, "cannot write link file " + path.string());
    }
    write_network(out, net);
    if (!out) {
        fail(ErrorCode::Io, "write failed for " + path.string());
    }
}

TemporalNetwork densify(const TemporalNetwork& net, double multiplier, std::mt19937_64& rng)
{
    require(multiplier > 1.0 && std::isfinite(multiplier), "densify: multiplier must be > 1");
    const auto original = net.links();
    require(!original.empty(), "densify: network has no links");
    const auto target = static_cast<std::size_t>(std::llround(multiplier * static_cast<double>(original.size())));
    const auto horizon = net.horizon_days();

    std::vector<ContactLink> links(original.begin(), original.end());
    links.reserve(std::max(target, original.size()));
    std::uniform_int_distribution<std::size_t> pick(0, original.size() - 1);
    std::uniform_int_distribution<std::int32_t> shift(0, horizon - 1);
    while (links.size() < target) {
        ContactLink copy = original[pick(rng)];
        const std::int32_t day = (copy.day + shift(rng)) % horizon;
        copy.start_time = std::int64_t{day} * kSecondsPerDay + copy.start_time % kSecondsPerDay;
        copy.day = day;
        links.push_back(copy);
    }
    return TemporalNetwork(std::move(links), net.node_count(), horizon);
}

WindowAdjacency::WindowAdjacency(const TemporalNetwork& net, std::int32_t window_days)
{
    require(window_days >= 1, "window_days must be >= 1");
    const auto window = net.links_in_order(0, std::min(window_days, std::max(net.horizon_days(), 0)));
    window_links_ = window.size();

    std::vector<std::uint64_t> pairs;
    pairs.reserve(window.size() * 2);
    for (const auto& l : window) {
        pairs.push_back((std::uint64_t{l.host} << 32) | l.visitor);
        pairs.push_back((std::uint64_t{l.visitor} << 32) | l.host);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    offsets_.assign(net.node_count() + 1, 0);
    neighbors_.reserve(pairs.size());
    for (auto p : pairs) {
        ++offsets_[(p >> 32) + 1];
        neighbors_.push_back(static_cast<NodeId>(p & 0xffffffffULL));
    }
    for (std::size_t v = 1; v < offsets_.size(); ++v) {
        offsets_[v] += offsets_[v - 1];
    }
}

std::span<const NodeId> WindowAdjacency::neighbors(NodeId node) const noexcept
{
    if (static_cast<std::size_t>(node) + 1 >= offsets_.size()) {
        return {};
    }
    return std::span<const NodeId>(neighbors_).subspan(offsets_[node], offsets_[node + 1] - offsets_[node]);
}

std::size_t degree(const TemporalNetwork& net, NodeId node, std::int32_t window_days)
{
    require(window_days >= 1, "window_days must be >= 1");
    std::vector<NodeId> seen;
    for (const auto& l : net.links_in_order(0, std::min(window_days, net.horizon_days()))) {
        if (l.host == node) {
            seen.push_back(l.visitor);
        } else if (l.visitor == node) {
            seen.push_back(l.host);
        }
    }
    std::sort(seen.begin(), seen.end());
    return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

std::uint64_t fingerprint(const TemporalNetwork& net)
{
    std::uint64_t h = derive_key(net.node_count(), static_cast<std::uint64_t>(net.horizon_days()));
    for (const auto& l : net.links()) {
        std::uint64_t e = 0;
        static_assert(sizeof(e) == sizeof(l.exposure));
        std::memcpy(&e, &l.exposure, sizeof(e));
        h = derive_key(h, (std::uint64_t{l.host} << 32) | l.visitor);
        h = derive_key(h, static_cast<std::uint64_t>(l.start_time) ^ (std::uint64_t{l.location} << 40));
        h = derive_key(h, e);
    }
    return h;
}

} // namespace vaxsim
