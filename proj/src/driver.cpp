#include "crowdlag/driver.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace crowdlag {

namespace {

namespace fs = std::filesystem;

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

RunSummary run_with_config(const RunConfig& config) {
    validate_config(config);
    const ScenarioSpec spec = to_scenario_spec(config);
    CsvDirSink sink(config.out_dir);
    const RunSummary summary =
        run(spec, config.duration, config.snapshot_times, sink, config.gradient_scheme);
    if (config.render) {
        RenderOptions options;
        options.rho_max = config.model.rho_jam;
        options.duration = config.duration;
        render_from_dir(config.out_dir, options);
    }
    return summary;
}

void render_from_dir(const std::string& dir, RenderOptions options) {
    const fs::path root(dir);
    if (!fs::is_directory(root)) {
        throw std::runtime_error("'" + dir + "' is not a directory");
    }

    std::vector<std::pair<double, std::string>> snapshots;  // (time, tag)
    for (const auto& entry : fs::directory_iterator(root)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("snapshot_", 0) != 0 || name.size() < 13 ||
            name.substr(name.size() - 4) != ".csv") {
            continue;
        }
        const std::string tag = name.substr(9, name.size() - 13);
        try {
            snapshots.emplace_back(std::stod(tag), tag);
        } catch (const std::exception&) {
            continue;  // not one of ours
        }
    }
    std::sort(snapshots.begin(), snapshots.end());

    for (const auto& [time, tag] : snapshots) {
        const fs::path mesh_path = root / ("mesh_" + tag + ".csv");
        if (!fs::exists(mesh_path)) {
            throw std::runtime_error("missing '" + mesh_path.string() +
                                     "' needed to render snapshot_" + tag + ".csv");
        }
        std::ifstream snap_in(root / ("snapshot_" + tag + ".csv"));
        const auto records = read_snapshot(snap_in);
        std::ifstream mesh_in(mesh_path);
        const auto cells = read_mesh_csv(mesh_in);
        spit(root / ("density_" + tag + ".svg"),
             render_density_svg(records, cells, options));
    }

    const fs::path traj_path = root / "trajectories.csv";
    if (fs::exists(traj_path)) {
        std::ifstream in(traj_path);
        const auto records = read_trajectories(in);
        RenderOptions traj_options = options;
        if (traj_options.duration <= 0.0) {
            for (const auto& r : records) {
                traj_options.duration = std::max(traj_options.duration, r.time);
            }
        }
        spit(root / "trajectories.svg", render_trajectories_svg(records, traj_options));
    }
}

}  // namespace crowdlag
