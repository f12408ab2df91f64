#pragma once

#include <vector>

#include "crowdlag/io.hpp"
#include "crowdlag/scenarios.hpp"

namespace crowdlag {

struct SimulationState {
    Mesh mesh;
    std::vector<CellState> cells;
    std::vector<VertexState> vertices;
    double time = 0.0;
    int step_index = 0;

    int epoch() const { return mesh.epoch; }
    double total_pedestrians() const;
};

struct RemeshTrigger {
    int cell_id = -1;
    int condition = 0;  // 1 jam density, 2 orientation flip, 3 area ratio below alpha
};

struct RemeshReport {
    bool needed = false;
    std::vector<RemeshTrigger> triggers;
};

// Builds the regular mesh over the configured domain and discretizes the
// initial density onto it.
SimulationState make_initial_state(const ScenarioSpec& spec);

// One explicit Euler step: refresh cell densities, evaluate vertex fields
// from that frozen snapshot, move every vertex by dt * velocity, then check
// the remesh conditions on the moved mesh and remesh if any fires.
// Pedestrian counts are untouched except by remeshing.
void step(SimulationState& state, const ModelParams& model, const NumericalParams& numerics,
          const StaticField& field, GradientScheme scheme = GradientScheme::LineGradient);

// Expects areas and densities to be current.
RemeshReport remesh_needed(const SimulationState& state, const ModelParams& model,
                           const NumericalParams& numerics);

// Rebuilds a fresh regular mesh over the support of the crowd (aligned to
// the original domain lattice) and redistributes pedestrian counts by
// old/new-cell intersection areas. Donors with nonpositive or degenerate
// area hand their full count to the new cell containing their centroid.
// Throws if coverage is incomplete or the total count is not conserved.
void remesh(SimulationState& state, const NumericalParams& numerics);

// Explicit Euler path of a zero-density passive tracer in a static field;
// the same velocity composition and update rule a mesh vertex sees.
std::vector<Point2> advect_tracer(const StaticField& field, Point2 start,
                                  const ModelParams& model, double dt, int n_steps);

struct RunSummary {
    int steps = 0;
    int remesh_count = 0;
    double final_time = 0.0;
    double initial_total = 0.0;
    double final_total = 0.0;
};

// Drives a scenario for `duration` seconds, emitting a snapshot at t = 0 and
// at every requested time, and per-step trajectory records for cells holding
// at least one pedestrian. Snapshot times outside [0, duration] are
// rejected. Conservation is audited every step.
RunSummary run(const ScenarioSpec& spec, double duration, std::vector<double> snapshot_times,
               RecordSink& sink, GradientScheme scheme = GradientScheme::LineGradient,
               SimulationState* final_state = nullptr);

}  // namespace crowdlag
