// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C API. On failure prints one JSON object
// on stderr: {"error": "<status>", "message": "...", "command": "..."}.
#include "vaxsim/vaxsim.h"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

std::string json_escape(const std::string& s)
{
    std::string out;
    for (unsigned char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out;
}

int report(const std::string& command, const std::string& status, const std::string& message)
{
    std::cerr << "{\"error\":\"" << json_escape(status) << "\",\"message\":\"" << json_escape(message)
              << "\",\"command\":\"" << json_escape(command) << "\"}\n";
    return 1;
}

struct Args
{
    std::string config;
    std::string network;
    std::string out;
    std::string locations;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pre-emptive vaccination experiments on temporal contact networks"};
    app.set_version_flag("--version", std::string(vaxsim_version()));
    app.require_subcommand(1);

    Args args;
    auto add_common = [&](CLI::App* cmd, bool needs_network) {
        cmd->add_option("--config", args.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", args.out, "output directory")->required();
        cmd->add_option("--seed", args.seed, "override the master seed (generator seed for generate)");
        cmd->add_option("--workers", args.workers, "worker threads")->check(CLI::PositiveNumber);
        if (needs_network) {
            cmd->add_option("--network", args.network, "link file")->required()->check(CLI::ExistingFile);
            cmd->add_option("--locations", args.locations,
                            "location table (default: locations.csv next to the network)");
        }
    };
    auto* generate = app.add_subcommand("generate", "generate a synthetic network");
    add_common(generate, false);
    auto* calibrate = app.add_subcommand("calibrate", "calibrate sigma for each target R");
    add_common(calibrate, true);
    auto* simulate = app.add_subcommand("simulate", "run one (strategy, P, R) cell");
    add_common(simulate, true);
    auto* sweep = app.add_subcommand("sweep", "run every cell of the sweep grid");
    add_common(sweep, true);
    auto* threshold = app.add_subcommand("threshold", "threshold vaccination rate per strategy");
    add_common(threshold, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        return report(sub ? sub->get_name() : "", "usage", e.what());
    }

    vaxsim_options options;
    vaxsim_options_init(&options);
    if (args.seed) {
        options.seed = *args.seed;
        options.has_seed = 1;
    }
    options.workers = args.workers;
    options.locations_path = args.locations.empty() ? nullptr : args.locations.c_str();

    const auto* cmd = app.get_subcommands().front();
    const auto& name = cmd->get_name();
    const char* config = args.config.c_str();
    const char* network = args.network.c_str();
    const char* out = args.out.c_str();
    vaxsim_status status = VAXSIM_OK;
    if (name == "generate") {
        status = vaxsim_cmd_generate(config, out, &options);
    } else if (name == "calibrate") {
        status = vaxsim_cmd_calibrate(config, network, out, &options);
    } else if (name == "simulate") {
        status = vaxsim_cmd_simulate(config, network, out, &options);
    } else if (name == "sweep") {
        status = vaxsim_cmd_sweep(config, network, out, &options);
    } else {
        status = vaxsim_cmd_threshold(config, network, out, &options);
    }
    if (status != VAXSIM_OK) {
        return report(name, vaxsim_status_name(status), vaxsim_last_error_message());
    }
    return 0;
}
