// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared builders for small test networks.
#pragma once

#include "vaxsim/contact_network.hpp"
#include "vaxsim/random.hpp"
#include "vaxsim/synthetic_gen.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace vaxsim::test {

inline ContactLink make_link(NodeId host, NodeId visitor, std::int64_t start, double exposure,
                             LocationId location = 0)
{
    ContactLink l;
    l.host = host;
    l.visitor = visitor;
    l.start_time = start;
    l.exposure = exposure;
    l.location = location;
    l.day = day_of(start);
    return l;
}

/// Uniformly random links over `days`, host != visitor.
inline TemporalNetwork random_network(std::size_t nodes, std::size_t links, std::int32_t days, std::uint64_t seed,
                                      LocationId locations = 10)
{
    auto rng = make_engine(seed, "test/random_network");
    std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(nodes - 1));
    std::uniform_int_distribution<std::int64_t> time(0, std::int64_t{days} * kSecondsPerDay - 1);
    std::uniform_real_distribution<double> exposure(60.0, 7200.0);
    std::uniform_int_distribution<LocationId> loc(0, locations - 1);
    std::vector<ContactLink> out;
    while (out.size() < links) {
        const auto h = node(rng);
        const auto v = node(rng);
        if (h == v) {
            continue;
        }
        const auto t = time(rng);
        const auto e = exposure(rng);
        out.push_back(make_link(h, v, t, e, loc(rng)));
    }
    return TemporalNetwork(std::move(out), nodes, days);
}

/// A small generated network with location classes.
inline SyntheticNetwork small_synthetic(std::size_t nodes, std::uint64_t seed)
{
    GeneratorConfig config;
    config.nodes = nodes;
    const double scale = static_cast<double>(nodes) / 10000.0;
    for (auto& c : config.locations_per_class) {
        c = std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(c) * scale));
    }
    auto rng = make_engine(seed, "test/synthetic");
    return generate(config, rng);
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("vaxsim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace vaxsim::test
