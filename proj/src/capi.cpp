// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "vaxsim/vaxsim.h"

#include "vaxsim/contact_network.hpp"
#include "vaxsim/error.hpp"
#include "vaxsim/location_model.hpp"
#include "vaxsim/orchestration.hpp"
#include "vaxsim/random.hpp"
#include "vaxsim/simulator.hpp"

#include <json.hpp>

#include <exception>
#include <new>
#include <string>

struct vaxsim_network
{
    vaxsim::TemporalNetwork net;
};

struct vaxsim_locations
{
    vaxsim::LocationTable table;
};

namespace {

thread_local std::string g_last_error;

vaxsim_status record(vaxsim_status status, const char* message)
{
    g_last_error = message;
    return status;
}

// Runs fn, mapping exceptions to status codes.
template <class Fn>
vaxsim_status guarded(Fn&& fn) noexcept
{
    try {
        fn();
        return VAXSIM_OK;
    } catch (const vaxsim::Error& e) {
        return record(static_cast<vaxsim_status>(e.code()), e.what());
    } catch (const nlohmann::json::exception& e) {
        return record(VAXSIM_PARSE, e.what());
    } catch (const std::bad_alloc&) {
        return record(VAXSIM_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return record(VAXSIM_INTERNAL, e.what());
    } catch (...) {
        return record(VAXSIM_INTERNAL, "unknown error");
    }
}

void need(const void* p, const char* what)
{
    if (p == nullptr) {
        vaxsim::fail(vaxsim::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
    }
}

vaxsim::RunOptions to_options(const vaxsim_options* options)
{
    vaxsim::RunOptions out;
    if (options != nullptr) {
        if (options->has_seed) {
            out.seed = options->seed;
        }
        out.workers = options->workers == 0 ? 1 : options->workers;
        if (options->locations_path != nullptr) {
            out.locations = options->locations_path;
        }
    }
    return out;
}

} // namespace

extern "C" {

const char* vaxsim_version(void)
{
    return "0.1.0";
}

const char* vaxsim_status_name(vaxsim_status status)
{
    switch (status) {
    case VAXSIM_OK:
        return "ok";
    case VAXSIM_INVALID_ARGUMENT:
        return "invalid_argument";
    case VAXSIM_IO:
        return "io";
    case VAXSIM_PARSE:
        return "parse";
    case VAXSIM_UNREACHABLE:
        return "unreachable";
    case VAXSIM_INTERNAL:
        return "internal";
    }
    return "unknown";
}

const char* vaxsim_last_error_message(void)
{
    return g_last_error.c_str();
}

vaxsim_status vaxsim_network_load(const char* path, vaxsim_network** out)
{
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = nullptr;
        *out = new vaxsim_network{vaxsim::load_network(path)};
    });
}

vaxsim_status vaxsim_network_save(const vaxsim_network* net, const char* path)
{
    return guarded([&] {
        need(net, "net");
        need(path, "path");
        vaxsim::save_network(net->net, path);
    });
}

vaxsim_status vaxsim_network_densify(const vaxsim_network* net, double multiplier, uint64_t seed,
                                     vaxsim_network** out)
{
    return guarded([&] {
        need(net, "net");
        need(out, "out");
        *out = nullptr;
        auto rng = vaxsim::make_engine(seed, "densify");
        *out = new vaxsim_network{vaxsim::densify(net->net, multiplier, rng)};
    });
}

void vaxsim_network_free(vaxsim_network* net)
{
    delete net;
}

size_t vaxsim_network_node_count(const vaxsim_network* net)
{
    return net == nullptr ? 0 : net->net.node_count();
}

size_t vaxsim_network_link_count(const vaxsim_network* net)
{
    return net == nullptr ? 0 : net->net.link_count();
}

vaxsim_status vaxsim_network_degree(const vaxsim_network* net, uint32_t node, int32_t window_days, size_t* out)
{
    return guarded([&] {
        need(net, "net");
        need(out, "out");
        vaxsim::require(node < net->net.node_count(), "node out of range");
        *out = vaxsim::degree(net->net, node, window_days);
    });
}

vaxsim_status vaxsim_locations_load(const char* path, vaxsim_locations** out)
{
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = nullptr;
        *out = new vaxsim_locations{vaxsim::load_locations(path)};
    });
}

void vaxsim_locations_free(vaxsim_locations* locations)
{
    delete locations;
}

size_t vaxsim_locations_size(const vaxsim_locations* locations)
{
    return locations == nullptr ? 0 : locations->table.size();
}

vaxsim_status vaxsim_infection_probability(double sigma, double exposure_seconds, double* out)
{
    return guarded([&] {
        need(out, "out");
        vaxsim::DiseaseParams params;
        params.sigma = sigma;
        *out = vaxsim::infection_probability(params, exposure_seconds);
    });
}

vaxsim_status vaxsim_visit_potential(uint32_t visits, double beta, double* out)
{
    return guarded([&] {
        need(out, "out");
        *out = vaxsim::visit_potential(vaxsim::RankingBeta(beta), visits);
    });
}

vaxsim_status vaxsim_class_potential(int class_index, double beta, int class6_cap, double* out)
{
    return guarded([&] {
        need(out, "out");
        vaxsim::require(class_index >= 1 && class_index <= vaxsim::kClassCount, "class_index must be in 1..6");
        const auto bounds = vaxsim::ClassBounds::standard(class6_cap);
        *out = vaxsim::class_potential(vaxsim::RankingBeta(beta), bounds[class_index]);
    });
}

vaxsim_status vaxsim_ranking_score(const uint32_t* visits_per_class, double beta, int class6_cap, double* out)
{
    return guarded([&] {
        need(visits_per_class, "visits_per_class");
        need(out, "out");
        vaxsim::VisitCounts counts{};
        for (std::size_t i = 0; i < counts.size(); ++i) {
            counts[i] = visits_per_class[i];
        }
        *out = vaxsim::ranking_score(counts, vaxsim::RankingBeta(beta), vaxsim::ClassBounds::standard(class6_cap));
    });
}

vaxsim_status vaxsim_efficiency(double mean_size, double baseline_mean, double* out)
{
    return guarded([&] {
        need(out, "out");
        *out = vaxsim::efficiency(mean_size, baseline_mean);
    });
}

void vaxsim_options_init(vaxsim_options* options)
{
    if (options != nullptr) {
        *options = vaxsim_options{0, 0, 1, nullptr};
    }
}

vaxsim_status vaxsim_cmd_generate(const char* config_path, const char* out_dir, const vaxsim_options* options)
{
    return guarded([&] {
        need(config_path, "config_path");
        need(out_dir, "out_dir");
        vaxsim::cmd_generate(config_path, out_dir, to_options(options));
    });
}

vaxsim_status vaxsim_cmd_calibrate(const char* config_path, const char* network_path, const char* out_dir,
                                   const vaxsim_options* options)
{
    return guarded([&] {
        need(config_path, "config_path");
        need(network_path, "network_path");
        need(out_dir, "out_dir");
        vaxsim::cmd_calibrate(config_path, network_path, out_dir, to_options(options));
    });
}

vaxsim_status vaxsim_cmd_simulate(const char* config_path, const char* network_path, const char* out_dir,
                                  const vaxsim_options* options)
{
    return guarded([&] {
        need(config_path, "config_path");
        need(network_path, "network_path");
        need(out_dir, "out_dir");
        vaxsim::cmd_simulate(config_path, network_path, out_dir, to_options(options));
    });
}

vaxsim_status vaxsim_cmd_sweep(const char* config_path, const char* network_path, const char* out_dir,
                               const vaxsim_options* options)
{
    return guarded([&] {
        need(config_path, "config_path");
        need(network_path, "network_path");
        need(out_dir, "out_dir");
        vaxsim::cmd_sweep(config_path, network_path, out_dir, to_options(options));
    });
}

vaxsim_status vaxsim_cmd_threshold(const char* config_path, const char* network_path, const char* out_dir,
                                   const vaxsim_options* options)
{
    return guarded([&] {
        need(config_path, "config_path");
        need(network_path, "network_path");
        need(out_dir, "out_dir");
        vaxsim::cmd_threshold(config_path, network_path, out_dir, to_options(options));
    });
}

} // extern "C"
