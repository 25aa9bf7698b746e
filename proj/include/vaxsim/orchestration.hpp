// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Batch experiment commands behind the CLI: generate, calibrate, simulate,
// sweep and threshold. All commands read one JSON config document and write
// CSV (plus SVG for sweeps) into an output directory.
#pragma once

#include "vaxsim/disease_model.hpp"
#include "vaxsim/simulator.hpp"
#include "vaxsim/synthetic_gen.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vaxsim {

struct SweepSpec
{
    std::vector<StrategyKind> strategies{StrategyKind::Random, StrategyKind::Acquaintance, StrategyKind::Degree,
                                         StrategyKind::Movement};
    std::vector<double> rate_grid{0, 0.5, 1, 1.5, 2, 3, 5, 10, 20, 40, 60, 80, 90};
    std::vector<double> r_grid{1.0, 1.2, 1.7};
    double fixed_rate = 1.0;          ///< P for the size-versus-R figure
    double threshold = 100.0;         ///< infections at paper scale
    double paper_population = 360000; ///< rescales the threshold to N

    void validate() const;
};

struct ProjectConfig
{
    std::uint64_t generator_seed = 1;
    GeneratorConfig generator;
    double generator_densify = 2.0;
    DiseaseParams disease;
    ExperimentConfig experiment;
    CalibrationSettings calibration;
    bool calibration_enabled = true;
    bool calibration_seed_given = false;
    SweepSpec sweep;
    std::string source_text; ///< raw document, hashed into manifests
};

/// Missing keys keep their defaults. Unknown keys are rejected.
ProjectConfig parse_config(const std::string& json_text);
ProjectConfig load_config(const std::filesystem::path& path);

std::string hex64(std::uint64_t v);

struct RunOptions
{
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::optional<std::filesystem::path> locations; ///< defaults to locations.csv next to the network
};

/// Writes spdt_links.csv, network.csv (densified), locations.csv and
/// manifest.json into out_dir.
void cmd_generate(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                  const RunOptions& options);

/// Calibrates sigma for every R in the sweep grid and the experiment target,
/// writing out_dir/calibration.csv. Returns target R -> sigma.
std::map<double, double> cmd_calibrate(const std::filesystem::path& config_path,
                                       const std::filesystem::path& network_path,
                                       const std::filesystem::path& out_dir, const RunOptions& options);

/// Single (strategy, P, R) cell from the experiment section.
ExperimentResult cmd_simulate(const std::filesystem::path& config_path, const std::filesystem::path& network_path,
                              const std::filesystem::path& out_dir, const RunOptions& options);

/// Every (strategy, P, R) cell of the sweep section; summary.csv, per-run
/// CSVs under runs/, thresholds.csv and three SVG figures.
void cmd_sweep(const std::filesystem::path& config_path, const std::filesystem::path& network_path,
               const std::filesystem::path& out_dir, const RunOptions& options);

/// Threshold rate per sweep strategy at the experiment's target R.
std::vector<ThresholdResult> cmd_threshold(const std::filesystem::path& config_path,
                                           const std::filesystem::path& network_path,
                                           const std::filesystem::path& out_dir, const RunOptions& options);

} // namespace vaxsim
