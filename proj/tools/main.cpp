#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crowdlag/driver.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw crowdlag::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonArgs {
    std::string config_path;
    std::string scenario;
    std::string out_dir;
    std::string gradient_scheme;
    std::string snapshots;
    double duration = -1.0;
    bool no_render = false;
};

crowdlag::RunConfig load_config(const CommonArgs& args) {
    std::optional<crowdlag::CaseId> scenario;
    if (!args.scenario.empty()) scenario = crowdlag::case_from_name(args.scenario);

    const std::string text = args.config_path.empty() ? "" : read_file(args.config_path);
    crowdlag::RunConfig cfg = crowdlag::parse_config(text, scenario);

    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.duration >= 0.0) {
        cfg.duration = args.duration;
        // Scenario-default snapshot times that fall outside a shortened run
        // are dropped; explicitly requested ones are validated strictly.
        if (args.snapshots.empty()) {
            std::erase_if(cfg.snapshot_times,
                          [&](double t) { return t > cfg.duration + 1e-9; });
        }
    }
    if (!args.snapshots.empty()) {
        cfg.snapshot_times.clear();
        std::stringstream ss(args.snapshots);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                cfg.snapshot_times.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw crowdlag::ConfigError("--snapshots: bad number '" + item + "'");
            }
        }
    }
    if (!args.gradient_scheme.empty()) {
        cfg.gradient_scheme = crowdlag::gradient_scheme_from_name(args.gradient_scheme);
    }
    if (args.no_render) cfg.render = false;
    crowdlag::validate_config(cfg);
    return cfg;
}

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Configuration file");
    cmd->add_option("--scenario", args.scenario, "Scenario: straight, zigzag or spiral");
    cmd->add_option("--out-dir", args.out_dir, "Output directory");
    cmd->add_option("--duration", args.duration, "Simulated time (s)");
    cmd->add_option("--snapshots", args.snapshots, "Comma-separated snapshot times (s)");
    cmd->add_option("--gradient-scheme", args.gradient_scheme,
                    "Density gradient scheme: line or paper-literal");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lagrangian moving-mesh crowd flow simulator"};
    app.require_subcommand(1);

    CommonArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "Simulate and write CSV/SVG outputs");
    add_common_options(run_cmd, run_args);
    run_cmd->add_flag("--no-render", run_args.no_render, "Skip SVG rendering");

    std::string render_dir = ".";
    CommonArgs render_args;
    CLI::App* render_cmd =
        app.add_subcommand("render", "Render SVG plots from existing CSV data");
    render_cmd->add_option("--out-dir", render_dir, "Directory holding the CSV files");
    render_cmd->add_option("--config", render_args.config_path,
                           "Optional config for colour scales");
    render_cmd->add_option("--scenario", render_args.scenario, "Scenario for the config");

    CommonArgs validate_args;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a configuration file");
    add_common_options(validate_cmd, validate_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const crowdlag::RunConfig cfg = load_config(run_args);
            const crowdlag::RunSummary summary = crowdlag::run_with_config(cfg);
            std::cout << "scenario " << crowdlag::case_name(cfg.scenario) << ": "
                      << summary.steps << " steps, " << summary.remesh_count
                      << " remeshes, total " << summary.final_total << " of "
                      << summary.initial_total << " pedestrians, outputs in " << cfg.out_dir
                      << "\n";
        } else if (render_cmd->parsed()) {
            crowdlag::RenderOptions options;
            options.duration = 0.0;  // span the data unless a config says otherwise
            if (!render_args.config_path.empty() || !render_args.scenario.empty()) {
                const crowdlag::RunConfig cfg = load_config(render_args);
                options.rho_max = cfg.model.rho_jam;
                options.duration = cfg.duration;
            }
            crowdlag::render_from_dir(render_dir, options);
            std::cout << "rendered SVGs in " << render_dir << "\n";
        } else if (validate_cmd->parsed()) {
            load_config(validate_args);
            std::cout << "OK\n";
        }
    } catch (const crowdlag::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
