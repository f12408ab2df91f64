#pragma once

#include <string>

#include "crowdlag/config.hpp"
#include "crowdlag/stepper.hpp"
#include "crowdlag/svg.hpp"

namespace crowdlag {

// Simulates per the config, writes snapshot/mesh/trajectory CSV files into
// config.out_dir and, unless rendering is disabled, renders SVGs from those
// files.
RunSummary run_with_config(const RunConfig& config);

// Renders density_<t>.svg for every snapshot_<t>.csv/mesh_<t>.csv pair in
// the directory and trajectories.svg from trajectories.csv. With a
// nonpositive duration the trajectory colour scale spans the data.
void render_from_dir(const std::string& dir, RenderOptions options);

}  // namespace crowdlag
