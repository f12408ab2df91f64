#pragma once

#include <numbers>

#include "crowdlag/geometry.hpp"

namespace crowdlag {

// Model parameters; defaults are the reference configuration used by the
// bundled scenarios.
struct ModelParams {
    double v_free = 1.3;    // free flow speed (m/s)
    double rho_jam = 5.4;   // jam density (persons/m^2)
    double beta_dyn = 0.5;  // weight of the density-gradient avoidance term

    double zigzag_a = std::numbers::pi / 2.0;        // zig-zag amplitude parameter
    double zigzag_b = 1.0 / (2.0 * std::numbers::pi);  // zig-zag frequency (1/m)

    Point2 spiral_center{60.0, 60.0};  // (m)
    double spiral_b = 0.2;             // attraction of the spiral centre

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct NumericalParams {
    double dt = 1.0;            // time step (s)
    double remesh_alpha = 0.01; // remesh when area/initial_area drops below this
    double cell_area = 56.9;    // area of the regular mesh triangles (m^2)
    Interval domain_x{0.0, 120.0};
    Interval domain_y{0.0, 120.0};
    double remesh_margin = -1.0;  // <= 0: one cell side length

    friend bool operator==(const NumericalParams&, const NumericalParams&) = default;
};

}  // namespace crowdlag
