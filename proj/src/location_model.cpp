// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "vaxsim/location_model.hpp"

#include "vaxsim/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

namespace vaxsim {

ClassBounds ClassBounds::standard(int class6_cap)
{
    return ClassBounds({{{1, 1, 5}, {2, 6, 15}, {3, 16, 25}, {4, 26, 50}, {5, 51, 100}, {6, 101, class6_cap}}});
}

ClassBounds::ClassBounds(const std::array<LocationClass, kClassCount>& classes) : classes_(classes)
{
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        const auto& c = classes_[i];
        require(c.index == static_cast<int>(i) + 1, "class indices must be 1..6 in order");
        require(c.lower >= 1 && c.upper >= c.lower,
                "class " + std::to_string(c.index) + ": bounds require 1 <= lower <= upper");
        if (i > 0) {
            require(c.lower > classes_[i - 1].upper,
                    "class " + std::to_string(c.index) + " overlaps the previous class");
        }
    }
}

RankingBeta::RankingBeta(double beta) : beta_(beta)
{
    require(beta >= 0.0 && beta <= 1.0, "ranking beta must lie in [0, 1]");
}

double visit_potential(RankingBeta beta, double contacts)
{
    require(contacts >= 0.0, "contact count must be >= 0");
    if (contacts == 0.0 || beta.value() == 0.0) {
        return 0.0;
    }
    if (beta.value() == 1.0) {
        return 1.0;
    }
    // expm1/log1p keeps full relative precision when beta * d is small.
    return -std::expm1(contacts * std::log1p(-beta.value()));
}

double class_potential(RankingBeta beta, const LocationClass& cls)
{
    return (visit_potential(beta, cls.lower) + visit_potential(beta, cls.upper)) / 2.0;
}

ClassPotentials class_potentials(RankingBeta beta, const ClassBounds& bounds)
{
    ClassPotentials w{};
    for (int i = 1; i <= kClassCount; ++i) {
        w[static_cast<std::size_t>(i - 1)] = class_potential(beta, bounds[i]);
    }
    return w;
}

double ranking_score(const VisitCounts& f, const ClassPotentials& potentials) noexcept
{
    double score = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        score += static_cast<double>(f[i]) * potentials[i];
    }
    return score;
}

double ranking_score(const VisitCounts& f, RankingBeta beta, const ClassBounds& bounds)
{
    return ranking_score(f, class_potentials(beta, bounds));
}

void LocationTable::set(LocationId id, int class_index)
{
    require(class_index >= 1 && class_index <= kClassCount,
            "location " + std::to_string(id) + ": class index must be in [1, 6]");
    if (id >= classes_.size()) {
        classes_.resize(static_cast<std::size_t>(id) + 1, 0);
    }
    if (classes_[id] == 0) {
        ++count_;
    }
    classes_[id] = static_cast<std::uint8_t>(class_index);
}

bool LocationTable::contains(LocationId id) const noexcept
{
    return id < classes_.size() && classes_[id] != 0;
}

int LocationTable::class_of(LocationId id) const
{
    if (!contains(id)) {
        fail(ErrorCode::InvalidArgument, "unknown location id " + std::to_string(id));
    }
    return classes_[id];
}

std::vector<std::pair<LocationId, int>> LocationTable::entries() const
{
    std::vector<std::pair<LocationId, int>> out;
    out.reserve(count_);
    for (std::size_t id = 0; id < classes_.size(); ++id) {
        if (classes_[id] != 0) {
            out.emplace_back(static_cast<LocationId>(id), classes_[id]);
        }
    }
    return out;
}

LocationTable parse_locations(std::istream& in, const std::string& source_name)
{
    LocationTable table;
    std::string line;
    std::size_t line_no = 0;
    std::array<std::string_view, 2> fields;
    while (std::getline(in, line)) {
        ++line_no;
        const auto row = detail::trim(line);
        if (row.empty()) {
            continue;
        }
        const auto n = detail::split_csv(row, fields);
        if (line_no == 1 && !detail::looks_numeric(fields[0])) {
            continue;
        }
        std::int64_t id = 0;
        std::int64_t cls = 0;
        if (n != 2 || !detail::parse_int(fields[0], id) || id < 0 || id > 0xfffffffeLL ||
            !detail::parse_int(fields[1], cls) || cls < 1 || cls > kClassCount) {
            fail(ErrorCode::Parse, source_name + ": line " + std::to_string(line_no) +
                                       ": expected 'location_id,class_index' with class in [1, 6]");
        }
        if (table.contains(static_cast<LocationId>(id))) {
            fail(ErrorCode::Parse, source_name + ": line " + std::to_string(line_no) + ": duplicate location id " +
                                       std::to_string(id));
        }
        table.set(static_cast<LocationId>(id), static_cast<int>(cls));
    }
    return table;
}

LocationTable load_locations(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open location table " + path.string());
    }
    return parse_locations(in, path.string());
}

void write_locations(std::ostream& out, const LocationTable& table)
{
    out << "location_id,class_index\n";
    for (const auto& [id, cls] : table.entries()) {
        out << id << ',' << cls << '\n';
    }
}

void save_locations(const LocationTable& table, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::Io, "cannot write location table " + path.string());
    }
    write_locations(out, table);
}

VisitLog build_visit_log(const TemporalNetwork& net, const LocationTable& locations,
                         std::int32_t window_days)
{
    require(window_days >= 1, "window_days must be >= 1");
    struct Visit
    {
        NodeId node;
        LocationId location;
        std::int64_t start_time;
        auto key() const noexcept { return std::tie(node, location, start_time); }
    };
    std::vector<Visit> visits;
    const auto window = net.links_in_order(0, std::min(window_days, net.horizon_days()));
    visits.reserve(window.size() * 2);
    for (const auto& l : window) {
        if (!locations.contains(l.location)) {
            fail(ErrorCode::InvalidArgument, "link references unknown location id " + std::to_string(l.location));
        }
        visits.push_back({l.host, l.location, l.start_time});
        visits.push_back({l.visitor, l.location, l.start_time});
    }
    std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) { return a.key() < b.key(); });
    visits.erase(std::unique(visits.begin(), visits.end(),
                             [](const Visit& a, const Visit& b) { return a.key() == b.key(); }),
                 visits.end());

    VisitLog log(net.node_count(), VisitCounts{});
    for (const auto& v : visits) {
        ++log[v.node][static_cast<std::size_t>(locations.class_of(v.location) - 1)];
    }
    return log;
}

} // namespace vaxsim
