// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaxsim/vaxsim.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name)
{
    auto dir = fs::temp_directory_path() / (std::string("vaxsim_capi_") + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("version and status names")
{
    CHECK(std::strlen(vaxsim_version()) > 0);
    CHECK(std::string(vaxsim_status_name(VAXSIM_OK)) == "ok");
    CHECK(std::string(vaxsim_status_name(VAXSIM_UNREACHABLE)) == "unreachable");
    CHECK(vaxsim_last_error_message() != nullptr);
}

TEST_CASE("formula functions")
{
    double v = 0.0;
    REQUIRE(vaxsim_infection_probability(1.0, 3600.0, &v) == VAXSIM_OK);
    CHECK(v == doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(vaxsim_infection_probability(1.0, -1.0, &v) == VAXSIM_INVALID_ARGUMENT);
    CHECK(std::strlen(vaxsim_last_error_message()) > 0);

    REQUIRE(vaxsim_visit_potential(2, 0.5, &v) == VAXSIM_OK);
    CHECK(v == doctest::Approx(0.75));
    REQUIRE(vaxsim_class_potential(1, 0.5, 500, &v) == VAXSIM_OK);
    CHECK(v == doctest::Approx(0.734375));
    CHECK(vaxsim_class_potential(7, 0.5, 500, &v) == VAXSIM_INVALID_ARGUMENT);
    CHECK(vaxsim_visit_potential(2, 1.5, &v) == VAXSIM_INVALID_ARGUMENT);

    const uint32_t f[6] = {1, 0, 0, 0, 0, 0};
    REQUIRE(vaxsim_ranking_score(f, 0.5, 500, &v) == VAXSIM_OK);
    CHECK(v == doctest::Approx(0.734375));

    REQUIRE(vaxsim_efficiency(2725.65, 3365.0, &v) == VAXSIM_OK);
    CHECK(std::abs(v - 0.19) <= 0.001);
    CHECK(vaxsim_efficiency(1.0, 0.0, &v) == VAXSIM_INVALID_ARGUMENT);
    CHECK(vaxsim_efficiency(1.0, 1.0, nullptr) == VAXSIM_INVALID_ARGUMENT);
}

TEST_CASE("network handles")
{
    const auto dir = temp_dir("network");
    std::ofstream(dir / "links.csv") << "0,1,100,600,3\n1,2,50,300,7\n2,0,90000,30,1\n";
    vaxsim_network* net = nullptr;
    REQUIRE(vaxsim_network_load((dir / "links.csv").c_str(), &net) == VAXSIM_OK);
    CHECK(vaxsim_network_node_count(net) == 3);
    CHECK(vaxsim_network_link_count(net) == 3);
    size_t d = 0;
    REQUIRE(vaxsim_network_degree(net, 0, 1, &d) == VAXSIM_OK);
    CHECK(d == 1);
    REQUIRE(vaxsim_network_degree(net, 0, 2, &d) == VAXSIM_OK);
    CHECK(d == 2);
    CHECK(vaxsim_network_degree(net, 9, 2, &d) == VAXSIM_INVALID_ARGUMENT);

    vaxsim_network* dense = nullptr;
    REQUIRE(vaxsim_network_densify(net, 2.0, 1, &dense) == VAXSIM_OK);
    CHECK(vaxsim_network_link_count(dense) == 6);
    CHECK(vaxsim_network_densify(net, 1.0, 1, &dense) == VAXSIM_INVALID_ARGUMENT);
    REQUIRE(vaxsim_network_save(net, (dir / "copy.csv").c_str()) == VAXSIM_OK);
    vaxsim_network_free(dense);
    vaxsim_network_free(net);
    vaxsim_network_free(nullptr);

    std::ofstream(dir / "bad.csv") << "0,0,1,1,1\n";
    net = reinterpret_cast<vaxsim_network*>(0x1);
    CHECK(vaxsim_network_load((dir / "bad.csv").c_str(), &net) == VAXSIM_PARSE);
    CHECK(net == nullptr);
    CHECK(std::string(vaxsim_last_error_message()).find("line 1") != std::string::npos);
    CHECK(vaxsim_network_load((dir / "missing.csv").c_str(), &net) == VAXSIM_IO);
    CHECK(vaxsim_network_load(nullptr, &net) == VAXSIM_INVALID_ARGUMENT);

    std::ofstream(dir / "locations.csv") << "location_id,class_index\n3,1\n7,2\n1,6\n";
    vaxsim_locations* locations = nullptr;
    REQUIRE(vaxsim_locations_load((dir / "locations.csv").c_str(), &locations) == VAXSIM_OK);
    CHECK(vaxsim_locations_size(locations) == 3);
    vaxsim_locations_free(locations);
}

TEST_CASE("commands through the C interface")
{
    const auto dir = temp_dir("commands");
    std::ofstream(dir / "config.json") << R"({
      "seed": 2,
      "generator": {"nodes": 200, "locations_per_class": [60, 12, 3, 1, 1, 1]},
      "experiment": {"runs": 30, "strategy": "dv", "rate_P": 5},
      "calibration": {"runs": 1000},
      "sweep": {"strategies": ["rv", "dv"], "P_grid": [0, 5], "R_grid": [1.0], "fixed_P": 5}
    })";
    vaxsim_options options;
    vaxsim_options_init(&options);
    CHECK(options.workers == 1);
    const auto config = (dir / "config.json").string();
    const auto network = (dir / "net" / "network.csv").string();
    REQUIRE(vaxsim_cmd_generate(config.c_str(), (dir / "net").c_str(), &options) == VAXSIM_OK);
    CHECK(fs::exists(dir / "net" / "manifest.json"));
    REQUIRE(vaxsim_cmd_calibrate(config.c_str(), network.c_str(), (dir / "out").c_str(), nullptr) == VAXSIM_OK);
    REQUIRE(vaxsim_cmd_simulate(config.c_str(), network.c_str(), (dir / "out").c_str(), &options) == VAXSIM_OK);
    REQUIRE(vaxsim_cmd_sweep(config.c_str(), network.c_str(), (dir / "out").c_str(), &options) == VAXSIM_OK);
    REQUIRE(vaxsim_cmd_threshold(config.c_str(), network.c_str(), (dir / "out").c_str(), &options) == VAXSIM_OK);
    CHECK(fs::exists(dir / "out" / "summary.csv"));
    CHECK(fs::exists(dir / "out" / "threshold.csv"));

    std::ofstream(dir / "broken.json") << "{ nope";
    CHECK(vaxsim_cmd_generate((dir / "broken.json").c_str(), (dir / "x").c_str(), nullptr) == VAXSIM_PARSE);
    CHECK(vaxsim_cmd_sweep(config.c_str(), (dir / "none.csv").c_str(), (dir / "x").c_str(), nullptr) == VAXSIM_IO);
}
