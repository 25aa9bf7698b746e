// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "vaxsim/orchestration.hpp"

#include "vaxsim/error.hpp"
#include "vaxsim/random.hpp"
#include "svg_plot.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace vaxsim {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& section)
{
    if (!obj.is_object()) {
        fail(ErrorCode::Parse, "config: '" + section + "' must be an object");
    }
    for (const auto& item : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; })) {
            fail(ErrorCode::Parse, "config: unknown key '" + section + "." + item.key() + "'");
        }
    }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& section)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        return;
    }
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        fail(ErrorCode::Parse, "config: '" + section + "." + key + "' has the wrong type");
    }
}

const json* section(const json& root, const char* name)
{
    const auto it = root.find(name);
    return it == root.end() ? nullptr : &*it;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::Io, "cannot write " + path.string());
    }
    out << content;
    if (!out) {
        fail(ErrorCode::Io, "write failed for " + path.string());
    }
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        fail(ErrorCode::Io, "cannot create output directory " + dir.string());
    }
}

std::string label(double v)
{
    return detail::shortest(v);
}

} // namespace

std::string hex64(std::uint64_t v)
{
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << v;
    return s.str();
}

void SweepSpec::validate() const
{
    require(!strategies.empty(), "sweep: strategies must not be empty");
    require(!rate_grid.empty(), "sweep: P_grid must not be empty");
    require(!r_grid.empty(), "sweep: R_grid must not be empty");
    for (double p : rate_grid) {
        require(p >= 0.0 && p < 100.0, "sweep: P values must lie in [0, 100)");
    }
    require(std::is_sorted(rate_grid.begin(), rate_grid.end()), "sweep: P_grid must be ascending");
    for (double r : r_grid) {
        require(r >= 0.0, "sweep: R values must be >= 0");
    }
    require(std::find(rate_grid.begin(), rate_grid.end(), fixed_rate) != rate_grid.end(),
            "sweep: fixed_P must be one of the P_grid values");
    require(threshold > 0.0 && paper_population > 0.0, "sweep: threshold and paper_population must be > 0");
}

ProjectConfig parse_config(const std::string& json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Parse, std::string("config: ") + e.what());
    }
    ProjectConfig c;
    c.source_text = json_text;
    check_keys(root, {"seed", "generator", "disease", "ranking", "experiment", "calibration", "sweep"}, "config");
    read(root, "seed", c.generator_seed, "config");

    if (const auto* g = section(root, "generator")) {
        check_keys(*g,
                   {"nodes", "days", "locations_per_class", "activity_exponent", "activity_min", "activity_cap",
                    "class_visit_weights", "visit_duration_median_minutes", "visit_duration_log_sd",
                    "indirect_fraction", "decay_rate_per_minute", "indirect_window_minutes", "densify_multiplier"},
                   "generator");
        auto& gc = c.generator;
        read(*g, "nodes", gc.nodes, "generator");
        read(*g, "days", gc.days, "generator");
        read(*g, "locations_per_class", gc.locations_per_class, "generator");
        read(*g, "activity_exponent", gc.activity_exponent, "generator");
        read(*g, "activity_min", gc.activity_min, "generator");
        read(*g, "activity_cap", gc.activity_cap, "generator");
        read(*g, "class_visit_weights", gc.class_visit_weights, "generator");
        read(*g, "visit_duration_median_minutes", gc.duration_median_minutes, "generator");
        read(*g, "visit_duration_log_sd", gc.duration_log_sd, "generator");
        read(*g, "indirect_fraction", gc.indirect_fraction, "generator");
        read(*g, "decay_rate_per_minute", gc.decay_rate_per_minute, "generator");
        read(*g, "indirect_window_minutes", gc.indirect_window_minutes, "generator");
        read(*g, "densify_multiplier", c.generator_densify, "generator");
    }
    if (const auto* d = section(root, "disease")) {
        check_keys(*d,
                   {"sigma", "incubation_log_mean", "incubation_log_sd", "latent_offset_days",
                    "infectious_duration_days"},
                   "disease");
        read(*d, "sigma", c.disease.sigma, "disease");
        read(*d, "incubation_log_mean", c.disease.incubation_log_mean, "disease");
        read(*d, "incubation_log_sd", c.disease.incubation_log_sd, "disease");
        read(*d, "latent_offset_days", c.disease.latent_offset_days, "disease");
        read(*d, "infectious_duration_days", c.disease.infectious_duration_days, "disease");
    }
    auto& e = c.experiment;
    if (const auto* r = section(root, "ranking")) {
        check_keys(*r, {"window_days", "beta", "class6_cap", "nominations_per_node"}, "ranking");
        read(*r, "window_days", e.ranking_window_days, "ranking");
        read(*r, "beta", e.ranking_beta, "ranking");
        read(*r, "class6_cap", e.class6_cap, "ranking");
        read(*r, "nominations_per_node", e.nominations_per_node, "ranking");
    }
    if (const auto* x = section(root, "experiment")) {
        check_keys(*x,
                   {"strategy", "rate_P", "horizon_days", "runs", "target_R", "master_seed", "densify_multiplier"},
                   "experiment");
        std::string strategy(to_string(e.strategy));
        read(*x, "strategy", strategy, "experiment");
        e.strategy = parse_strategy(strategy);
        read(*x, "rate_P", e.rate_percent, "experiment");
        read(*x, "horizon_days", e.horizon_days, "experiment");
        read(*x, "runs", e.runs, "experiment");
        read(*x, "target_R", e.target_r, "experiment");
        read(*x, "master_seed", e.master_seed, "experiment");
        read(*x, "densify_multiplier", e.densify_multiplier, "experiment");
    }
    if (const auto* k = section(root, "calibration")) {
        check_keys(*k, {"enabled", "runs", "tolerance", "sigma_lo", "sigma_hi", "max_iters", "seed"}, "calibration");
        read(*k, "enabled", c.calibration_enabled, "calibration");
        read(*k, "runs", c.calibration.runs, "calibration");
        read(*k, "tolerance", c.calibration.tolerance, "calibration");
        read(*k, "sigma_lo", c.calibration.sigma_lo, "calibration");
        read(*k, "sigma_hi", c.calibration.sigma_hi, "calibration");
        read(*k, "max_iters", c.calibration.max_iters, "calibration");
        if (k->contains("seed")) {
            read(*k, "seed", c.calibration.seed, "calibration");
            c.calibration_seed_given = true;
        }
    }
    if (const auto* s = section(root, "sweep")) {
        check_keys(*s, {"strategies", "P_grid", "R_grid", "fixed_P", "threshold", "paper_population"}, "sweep");
        if (s->contains("strategies")) {
            std::vector<std::string> names;
            read(*s, "strategies", names, "sweep");
            c.sweep.strategies.clear();
            for (const auto& n : names) {
                c.sweep.strategies.push_back(parse_strategy(n));
            }
        }
        read(*s, "P_grid", c.sweep.rate_grid, "sweep");
        read(*s, "R_grid", c.sweep.r_grid, "sweep");
        read(*s, "fixed_P", c.sweep.fixed_rate, "sweep");
        read(*s, "threshold", c.sweep.threshold, "sweep");
        read(*s, "paper_population", c.sweep.paper_population, "sweep");
    }
    c.generator.validate();
    require(c.generator_densify >= 1.0, "generator.densify_multiplier must be >= 1");
    c.disease.validate();
    e.validate();
    require(e.densify_multiplier >= 1.0, "experiment.densify_multiplier must be >= 1");
    c.sweep.validate();
    c.calibration.start_day = e.ranking_window_days;
    c.calibration.horizon_days = e.horizon_days;
    return c;
}

ProjectConfig load_config(const fs::path& path)
{
    return parse_config(read_file(path));
}

namespace {

struct Workspace
{
    ProjectConfig config;
    TemporalNetwork net;
    LocationTable locations;
    std::uint64_t network_fingerprint = 0;
};

Workspace open_workspace(const fs::path& config_path, const fs::path& network_path, const RunOptions& options)
{
    Workspace ws;
    ws.config = load_config(config_path);
    auto& e = ws.config.experiment;
    if (options.seed) {
        e.master_seed = *options.seed;
    }
    e.workers = std::max(1u, options.workers);
    auto& cal = ws.config.calibration;
    cal.workers = e.workers;
    if (!ws.config.calibration_seed_given) {
        cal.seed = derive_key(e.master_seed, std::string_view{"calibration"});
    }
    ws.net = load_network(network_path);
    if (e.densify_multiplier > 1.0) {
        auto rng = make_engine(e.master_seed, "densify");
        ws.net = densify(ws.net, e.densify_multiplier, rng);
    }
    ws.locations = load_locations(options.locations ? *options.locations
                                                     : network_path.parent_path() / "locations.csv");
    ws.network_fingerprint = fingerprint(ws.net);
    return ws;
}

struct CalibrationRow
{
    double sigma;
    double empirical_r;
    int iterations;
};

using CalibrationKey = std::tuple<std::string, std::string, std::size_t, std::string>;

constexpr const char* kCalibrationHeader =
    "network_fingerprint,target_R,calibration_runs,calibration_seed,sigma,empirical_R,iterations";

std::map<CalibrationKey, CalibrationRow> read_calibration_cache(const fs::path& path)
{
    std::map<CalibrationKey, CalibrationRow> rows;
    std::ifstream in(path);
    if (!in) {
        return rows;
    }
    std::string line;
    std::getline(in, line);
    if (detail::trim(line) != kCalibrationHeader) {
        return rows;
    }
    std::array<std::string_view, 7> f;
    while (std::getline(in, line)) {
        if (detail::split_csv(detail::trim(line), f) != f.size()) {
            continue;
        }
        std::int64_t runs = 0;
        std::int64_t iters = 0;
        CalibrationRow row{};
        if (!detail::parse_int(f[2], runs) || !detail::parse_double(f[4], row.sigma) ||
            !detail::parse_double(f[5], row.empirical_r) || !detail::parse_int(f[6], iters)) {
            continue;
        }
        row.iterations = static_cast<int>(iters);
        rows[{std::string(f[0]), std::string(f[1]), static_cast<std::size_t>(runs), std::string(f[3])}] = row;
    }
    return rows;
}

/// Sigma per target R, reusing out_dir/calibration.csv where it matches the
/// network and calibration settings.
std::map<double, double> resolve_sigmas(const Workspace& ws, const std::vector<double>& targets,
                                        const fs::path& out_dir)
{
    const auto path = out_dir / "calibration.csv";
    auto cache = read_calibration_cache(path);
    const auto& cal = ws.config.calibration;
    const auto fp = hex64(ws.network_fingerprint);
    const auto seed = std::to_string(cal.seed);
    std::map<double, double> sigmas;
    bool changed = false;
    for (double r : targets) {
        const CalibrationKey key{fp, label(r), cal.runs, seed};
        auto it = cache.find(key);
        if (it == cache.end()) {
            if (!ws.config.calibration_enabled) {
                fail(ErrorCode::InvalidArgument,
                     "no cached calibration for R=" + label(r) + " in " + path.string() + " and calibration is disabled");
            }
            const auto result = calibrate_sigma(ws.net, r, cal, ws.config.disease);
            it = cache.emplace(key, CalibrationRow{result.sigma, result.empirical_r, result.iterations}).first;
            changed = true;
        }
        sigmas[r] = it->second.sigma;
    }
    if (changed) {
        std::string out = std::string(kCalibrationHeader) + "\n";
        for (const auto& [k, row] : cache) {
            out += std::get<0>(k) + ',' + std::get<1>(k) + ',' + std::to_string(std::get<2>(k)) + ',' +
                   std::get<3>(k) + ',' + detail::shortest(row.sigma) + ',' + detail::shortest(row.empirical_r) +
                   ',' + std::to_string(row.iterations) + '\n';
        }
        write_file(path, out);
    }
    return sigmas;
}

std::string runs_csv(const ReplicationBatch& batch)
{
    std::string out = "run_index,seed_node,outbreak_size\n";
    for (std::size_t r = 0; r < batch.sizes.size(); ++r) {
        out += std::to_string(r) + ',' + std::to_string(batch.seeds[r]) + ',' + std::to_string(batch.sizes[r]) + '\n';
    }
    return out;
}

constexpr const char* kSummaryHeader = "strategy,P,R,mean_size,sd,efficiency,runs\n";

std::string summary_row(const ExperimentResult& r)
{
    return std::string(to_string(r.strategy)) + ',' + label(r.rate_percent) + ',' + label(r.target_r) + ',' +
           detail::fixed(r.mean_size, 6) + ',' + detail::fixed(r.sd, 6) + ',' + detail::fixed(r.efficiency, 6) +
           ',' + std::to_string(r.runs) + '\n';
}

std::string cell_name(StrategyKind s, double p, double r)
{
    return std::string(to_string(s)) + "_P" + label(p) + "_R" + label(r) + ".csv";
}

std::vector<double> calibration_targets(const ProjectConfig& c)
{
    std::vector<double> targets = c.sweep.r_grid;
    targets.push_back(c.experiment.target_r);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

std::string threshold_bar_chart(const std::vector<StrategyKind>& strategies,
                                const std::vector<ThresholdResult>& results, double r)
{
    std::vector<std::pair<std::string, std::optional<double>>> bars;
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        bars.emplace_back(std::string(to_string(strategies[i])), results[i].rate_percent);
    }
    const auto threshold = results.empty() ? 0.0 : results.front().threshold;
    return detail::bar_chart_svg({"Vaccination rate for mean outbreak < " + detail::fixed(threshold, 2) +
                                      " (R=" + label(r) + ")",
                                  "strategy", "vaccination rate P (%)", false},
                                 bars);
}

} // namespace

void cmd_generate(const fs::path& config_path, const fs::path& out_dir, const RunOptions& options)
{
    const auto config = load_config(config_path);
    const auto seed = options.seed.value_or(config.generator_seed);
    ensure_dir(out_dir);
    auto rng = make_engine(seed, "generate");
    const auto synthetic = generate(config.generator, rng);
    TemporalNetwork ddt = synthetic.network;
    if (config.generator_densify > 1.0) {
        auto densify_rng = make_engine(seed, "densify");
        ddt = densify(synthetic.network, config.generator_densify, densify_rng);
    }
    save_network(synthetic.network, out_dir / "spdt_links.csv");
    save_network(ddt, out_dir / "network.csv");
    save_locations(synthetic.locations, out_dir / "locations.csv");

    json manifest;
    manifest["seed"] = seed;
    manifest["config_hash"] = hex64(fnv1a64(config.source_text));
    manifest["config_path"] = config_path.string();
    manifest["nodes"] = ddt.node_count();
    manifest["days"] = ddt.horizon_days();
    manifest["spdt_links"] = synthetic.network.link_count();
    manifest["links"] = ddt.link_count();
    manifest["densify_multiplier"] = config.generator_densify;
    manifest["locations"] = synthetic.locations.size();
    manifest["network_fingerprint"] = hex64(fingerprint(ddt));
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

std::map<double, double> cmd_calibrate(const fs::path& config_path, const fs::path& network_path,
                                       const fs::path& out_dir, const RunOptions& options)
{
    auto ws = open_workspace(config_path, network_path, options);
    ws.config.calibration_enabled = true;
    ensure_dir(out_dir);
    return resolve_sigmas(ws, calibration_targets(ws.config), out_dir);
}

ExperimentResult cmd_simulate(const fs::path& config_path, const fs::path& network_path, const fs::path& out_dir,
                              const RunOptions& options)
{
    const auto ws = open_workspace(config_path, network_path, options);
    ensure_dir(out_dir);
    const auto& e = ws.config.experiment;
    auto params = ws.config.disease;
    params.sigma = resolve_sigmas(ws, {e.target_r}, out_dir).at(e.target_r);
    const auto result = run_experiment(e, ws.net, ws.locations, params);
    ReplicationBatch batch{result.seeds, result.sizes};
    write_file(out_dir / ("runs_" + cell_name(e.strategy, e.rate_percent, e.target_r)), runs_csv(batch));
    write_file(out_dir / "summary.csv", kSummaryHeader + summary_row(result));
    return result;
}

void cmd_sweep(const fs::path& config_path, const fs::path& network_path, const fs::path& out_dir,
               const RunOptions& options)
{
    const auto ws = open_workspace(config_path, network_path, options);
    const auto& spec = ws.config.sweep;
    const auto& base = ws.config.experiment;
    ensure_dir(out_dir);
    ensure_dir(out_dir / "runs");
    const auto sigmas = resolve_sigmas(ws, spec.r_grid, out_dir);
    const auto n = ws.net.node_count();
    const auto window = base.window();

    // Vaccinee sets do not depend on R.
    std::map<std::pair<StrategyKind, double>, VaccinationMask> masks;
    for (auto s : spec.strategies) {
        for (double p : spec.rate_grid) {
            auto cell = base;
            cell.strategy = s;
            cell.rate_percent = p;
            const auto vaccinees = select_vaccinees(cell, ws.net, ws.locations);
            if (vaccinees.size() >= n) {
                fail(ErrorCode::InvalidArgument, "sweep: P=" + label(p) + " vaccinates every node");
            }
            masks.emplace(std::pair{s, p}, make_mask(n, vaccinees));
        }
    }

    // results[r][strategy][p]
    std::map<double, std::map<StrategyKind, std::map<double, ExperimentResult>>> results;
    std::string summary = kSummaryHeader;
    std::string thresholds = "strategy,R,threshold,rate_P,reached\n";
    const double threshold = scaled_threshold(spec.threshold, n, spec.paper_population);
    std::map<double, std::vector<ThresholdResult>> threshold_results;
    for (double r : spec.r_grid) {
        auto params = ws.config.disease;
        params.sigma = sigmas.at(r);
        const VaccinationMask none(n, 0);
        const auto baseline = run_replications(ws.net, params, none, window, base.runs, base.master_seed, base.workers);
        write_file(out_dir / "runs" / ("baseline_R" + label(r) + ".csv"), runs_csv(baseline));
        const double baseline_mean = mean_of(baseline.sizes);
        for (auto s : spec.strategies) {
            std::vector<std::pair<double, double>> curve;
            for (double p : spec.rate_grid) {
                const auto& mask = masks.at({s, p});
                const bool empty = std::find(mask.begin(), mask.end(), std::uint8_t{1}) == mask.end();
                auto batch = empty ? baseline
                                   : run_replications(ws.net, params, mask, window, base.runs, base.master_seed,
                                                      base.workers);
                write_file(out_dir / "runs" / cell_name(s, p, r), runs_csv(batch));
                auto cell = base;
                cell.strategy = s;
                cell.rate_percent = p;
                cell.target_r = r;
                const auto vaccinated = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
                auto result = summarize(cell, vaccinated, std::move(batch), baseline_mean);
                summary += summary_row(result);
                curve.emplace_back(p, result.mean_size);
                results[r][s].emplace(p, std::move(result));
            }
            auto t = threshold_from_curve(std::move(curve), threshold);
            thresholds += std::string(to_string(s)) + ',' + label(r) + ',' + detail::fixed(threshold, 6) + ',' +
                          (t.rate_percent ? label(*t.rate_percent) : std::string()) + ',' +
                          (t.rate_percent ? "1" : "0") + '\n';
            threshold_results[r].push_back(std::move(t));
        }
    }
    write_file(out_dir / "summary.csv", summary);
    write_file(out_dir / "thresholds.csv", thresholds);

    const double r0 = spec.r_grid.front();
    std::vector<detail::PlotSeries> fig1;
    for (auto s : spec.strategies) {
        detail::PlotSeries series{std::string(to_string(s)), {}};
        for (const auto& [p, res] : results[r0][s]) {
            series.points.emplace_back(p, res.mean_size);
        }
        fig1.push_back(std::move(series));
    }
    write_file(out_dir / "fig1_outbreak_vs_rate.svg",
               detail::line_plot_svg({"Average outbreak size versus vaccination rate (R=" + label(r0) + ")",
                                      "vaccination rate P (%)", "mean outbreak size", true},
                                     fig1));
    write_file(out_dir / "fig2_threshold_rates.svg", threshold_bar_chart(spec.strategies, threshold_results[r0], r0));

    std::vector<detail::PlotSeries> fig3;
    for (auto s : spec.strategies) {
        detail::PlotSeries series{std::string(to_string(s)), {}};
        for (double r : spec.r_grid) {
            series.points.emplace_back(r, results[r][s].at(spec.fixed_rate).mean_size);
        }
        std::sort(series.points.begin(), series.points.end());
        fig3.push_back(std::move(series));
    }
    write_file(out_dir / "fig3_outbreak_vs_r.svg",
               detail::line_plot_svg({"Mean outbreak size versus R (P=" + label(spec.fixed_rate) + "%)",
                                      "reproduction number R", "mean outbreak size", true},
                                     fig3));
}

std::vector<ThresholdResult> cmd_threshold(const fs::path& config_path, const fs::path& network_path,
                                           const fs::path& out_dir, const RunOptions& options)
{
    const auto ws = open_workspace(config_path, network_path, options);
    const auto& spec = ws.config.sweep;
    const auto& base = ws.config.experiment;
    ensure_dir(out_dir);
    auto params = ws.config.disease;
    params.sigma = resolve_sigmas(ws, {base.target_r}, out_dir).at(base.target_r);
    const double threshold = scaled_threshold(spec.threshold, ws.net.node_count(), spec.paper_population);

    std::vector<ThresholdResult> results;
    std::string table = "strategy,R,threshold,rate_P,reached\n";
    std::string curves = "strategy,P,mean_size\n";
    for (auto s : spec.strategies) {
        auto cell = base;
        cell.strategy = s;
        auto t = threshold_rate(cell, ws.net, ws.locations, params, spec.rate_grid, threshold);
        table += std::string(to_string(s)) + ',' + label(base.target_r) + ',' + detail::fixed(threshold, 6) + ',' +
                 (t.rate_percent ? label(*t.rate_percent) : std::string()) + ',' + (t.rate_percent ? "1" : "0") +
                 '\n';
        for (const auto& [p, size] : t.curve) {
            curves += std::string(to_string(s)) + ',' + label(p) + ',' + detail::fixed(size, 6) + '\n';
        }
        results.push_back(std::move(t));
    }
    write_file(out_dir / "threshold.csv", table);
    write_file(out_dir / "threshold_curve.csv", curves);
    write_file(out_dir / "fig2_threshold_rates.svg", threshold_bar_chart(spec.strategies, results, base.target_r));
    return results;
}

} // namespace vaxsim
