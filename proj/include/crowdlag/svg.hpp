#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crowdlag/io.hpp"

namespace crowdlag {

struct RenderOptions {
    double rho_max = 5.4;      // density colour ramp upper end
    double duration = 80.0;    // trajectory time colour scale upper end
    double canvas_width = 720; // px
};

// One filled triangle per cell, white at density 0 ramping linearly to a
// dark tone at rho_max, with a legend bar. Output is a deterministic
// function of the inputs.
std::string render_density_svg(const std::vector<SnapshotRecord>& records,
                               const std::vector<std::pair<int, Triangle>>& cells,
                               const RenderOptions& options);

// One polyline per (epoch, cell): stroke width linear in the pedestrian
// count over [1, N_max], stroke colour yellow->green->cyan->blue over
// [0, duration]. Zero-length paths render as dots.
std::string render_trajectories_svg(const std::vector<TrajectoryRecord>& records,
                                    const RenderOptions& options);

}  // namespace crowdlag
