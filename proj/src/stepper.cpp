#include "crowdlag/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace crowdlag {

double SimulationState::total_pedestrians() const {
    double total = 0.0;
    for (const CellState& c : cells) total += c.n_peds;
    return total;
}

SimulationState make_initial_state(const ScenarioSpec& spec) {
    SimulationState state;
    state.mesh = build_regular_mesh(spec.numerics.domain_x, spec.numerics.domain_y,
                                    spec.numerics.cell_area);
    state.cells = populate_cells(state.mesh, spec);
    state.vertices.assign(static_cast<size_t>(state.mesh.vertex_count()), {});
    cell_density_update(state.mesh, state.cells);
    return state;
}

void step(SimulationState& state, const ModelParams& model, const NumericalParams& numerics,
          const StaticField& field, GradientScheme scheme) {
    cell_density_update(state.mesh, state.cells);

    const int nv = state.mesh.vertex_count();
    state.vertices.resize(static_cast<size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        VertexState& vs = state.vertices[static_cast<size_t>(v)];
        vs.density = vertex_density(state.mesh, state.cells, v);
        vs.density_gradient = vertex_density_gradient(state.mesh, state.cells, v, scheme);
        vs.velocity = compose_velocity(field(state.mesh.vertices[static_cast<size_t>(v)]),
                                       vs.density_gradient, vs.density, model);
        vs.speed = norm(vs.velocity);
    }

    for (int v = 0; v < nv; ++v) {
        state.mesh.vertices[static_cast<size_t>(v)] +=
            numerics.dt * state.vertices[static_cast<size_t>(v)].velocity;
    }

    cell_density_update(state.mesh, state.cells);
    const RemeshReport report = remesh_needed(state, model, numerics);
    bool any_degenerate = false;
    for (const CellState& c : state.cells) any_degenerate |= c.degenerate;
    if (report.needed || any_degenerate) {
        remesh(state, numerics);
    }

    ++state.step_index;
    state.time = state.step_index * numerics.dt;
}

RemeshReport remesh_needed(const SimulationState& state, const ModelParams& model,
                           const NumericalParams& numerics) {
    RemeshReport report;
    for (int ci = 0; ci < state.mesh.cell_count(); ++ci) {
        const CellState& c = state.cells[static_cast<size_t>(ci)];
        if (c.density > model.rho_jam) {
            report.triggers.push_back({ci, 1});
        }
        if (signed_area(state.mesh.cell_triangle(ci)) < 0.0) {
            report.triggers.push_back({ci, 2});
        } else if (c.initial_area > 0.0 && c.area / c.initial_area < numerics.remesh_alpha) {
            report.triggers.push_back({ci, 3});
        }
    }
    report.needed = !report.triggers.empty();
    return report;
}

namespace {

constexpr double kConservationTol = 1e-6;   // relative, whole-run guarantee
constexpr double kCoverageTol = 1e-7;       // relative per-donor clipping deficit

// Donors at or below this area (m^2) skip clipping: their pieces would fall
// under the sliver cutoff and the count goes to the centroid cell instead.
constexpr double kDegenerateDonorArea = 1e-9;

}  // namespace

void remesh(SimulationState& state, const NumericalParams& numerics) {
    const Mesh& old_mesh = state.mesh;
    const double total_before = state.total_pedestrians();

    // Bounding box of the crowd support; all cells when nothing is occupied.
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    bool any_support = false;
    for (int ci = 0; ci < old_mesh.cell_count(); ++ci) {
        if (state.cells[static_cast<size_t>(ci)].n_peds <= 0.0) continue;
        any_support = true;
        const Triangle t = old_mesh.cell_triangle(ci);
        for (const Point2& p : {t.v1, t.v2, t.v3}) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    if (!any_support) {
        for (const Point2& p : old_mesh.vertices) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    const double side = equilateral_side(numerics.cell_area);
    const double margin = numerics.remesh_margin > 0.0 ? numerics.remesh_margin : side;
    const Point2 anchor{numerics.domain_x.lo, numerics.domain_y.lo};
    const RegularLattice lattice = RegularLattice::covering(
        {min_x - margin, max_x + margin}, {min_y - margin, max_y + margin},
        numerics.cell_area, anchor);
    Mesh fresh = lattice.to_mesh(old_mesh.epoch + 1);

    std::vector<CellState> new_cells(static_cast<size_t>(fresh.cell_count()));
    for (int j = 0; j < fresh.cell_count(); ++j) {
        CellState& s = new_cells[static_cast<size_t>(j)];
        s.area = triangle_area(fresh.cell_triangle(j));
        s.initial_area = s.area;
    }

    std::vector<int> candidates;
    for (int ci = 0; ci < old_mesh.cell_count(); ++ci) {
        const double n = state.cells[static_cast<size_t>(ci)].n_peds;
        if (n <= 0.0) continue;
        const Triangle t = old_mesh.cell_triangle(ci);
        const double area = triangle_area(t);

        if (signed_area(t) <= 0.0 || area <= kDegenerateDonorArea) {
            // Area-ratio weights are undefined for flipped or collapsed
            // donors; the whole count goes to the cell under the centroid.
            const int j = lattice.locate(centroid(t));
            if (j < 0) {
                throw std::runtime_error("remesh: collapsed donor cell " + std::to_string(ci) +
                                         " lies outside the new mesh");
            }
            new_cells[static_cast<size_t>(j)].n_peds += n;
            continue;
        }

        const Point2 lo{std::min({t.v1.x, t.v2.x, t.v3.x}), std::min({t.v1.y, t.v2.y, t.v3.y})};
        const Point2 hi{std::max({t.v1.x, t.v2.x, t.v3.x}), std::max({t.v1.y, t.v2.y, t.v3.y})};
        candidates.clear();
        lattice.cells_overlapping(lo, hi, candidates);

        double covered = 0.0;
        for (const int j : candidates) {
            const double a_star = triangle_intersection_area(t, fresh.cell_triangle(j));
            if (a_star <= 0.0) continue;
            new_cells[static_cast<size_t>(j)].n_peds += (a_star / area) * n;
            covered += a_star;
        }
        if (std::abs(covered - area) > kCoverageTol * area) {
            throw std::runtime_error(
                "remesh: incomplete coverage of donor cell " + std::to_string(ci) +
                " (covered " + std::to_string(covered) + " of " + std::to_string(area) + " m^2)");
        }
    }

    for (auto& s : new_cells) {
        s.density = s.area > 0.0 ? s.n_peds / s.area : 0.0;
    }

    double total_after = 0.0;
    for (const auto& s : new_cells) total_after += s.n_peds;
    const double scale = std::max(std::abs(total_before), 1.0);
    if (std::abs(total_after - total_before) > kConservationTol * scale) {
        throw std::runtime_error("remesh: pedestrian count not conserved (" +
                                 std::to_string(total_before) + " -> " +
                                 std::to_string(total_after) + ")");
    }

    state.mesh = std::move(fresh);
    state.cells = std::move(new_cells);
    state.vertices.assign(static_cast<size_t>(state.mesh.vertex_count()), {});
}

std::vector<Point2> advect_tracer(const StaticField& field, Point2 start,
                                  const ModelParams& model, double dt, int n_steps) {
    std::vector<Point2> path;
    path.reserve(static_cast<size_t>(n_steps) + 1);
    path.push_back(start);
    Point2 x = start;
    for (int k = 0; k < n_steps; ++k) {
        x += dt * compose_velocity(field(x), {0.0, 0.0}, 0.0, model);
        path.push_back(x);
    }
    return path;
}

namespace {

std::vector<SnapshotRecord> snapshot_records(const SimulationState& state) {
    std::vector<SnapshotRecord> records;
    records.reserve(static_cast<size_t>(state.mesh.cell_count()));
    for (int ci = 0; ci < state.mesh.cell_count(); ++ci) {
        const CellState& c = state.cells[static_cast<size_t>(ci)];
        const Point2 cc = centroid(state.mesh.cell_triangle(ci));
        records.push_back({state.time, state.epoch(), ci, cc.x, cc.y, c.area, c.n_peds,
                           c.density});
    }
    return records;
}

std::vector<TrajectoryRecord> trajectory_records(const SimulationState& state) {
    std::vector<TrajectoryRecord> records;
    for (int ci = 0; ci < state.mesh.cell_count(); ++ci) {
        const CellState& c = state.cells[static_cast<size_t>(ci)];
        if (c.n_peds < 1.0) continue;
        const Point2 cc = centroid(state.mesh.cell_triangle(ci));
        records.push_back({state.time, state.epoch(), ci, cc.x, cc.y, c.n_peds});
    }
    return records;
}

}  // namespace

RunSummary run(const ScenarioSpec& spec, double duration, std::vector<double> snapshot_times,
               RecordSink& sink, GradientScheme scheme, SimulationState* final_state) {
    if (!(duration >= 0.0)) throw std::invalid_argument("duration must be >= 0");
    const double time_eps = 1e-9;
    for (const double t : snapshot_times) {
        if (t < -time_eps || t > duration + time_eps) {
            throw std::invalid_argument("snapshot time " + std::to_string(t) +
                                        " outside [0, duration]");
        }
    }
    std::sort(snapshot_times.begin(), snapshot_times.end());
    snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end()),
                         snapshot_times.end());

    SimulationState state = make_initial_state(spec);
    const StaticField field = static_field_for_case(spec.case_id, spec.model);
    const double initial_total = state.total_pedestrians();
    const double scale = std::max(std::abs(initial_total), 1.0);

    RunSummary summary;
    summary.initial_total = initial_total;

    size_t next_snapshot = 0;
    const auto emit_snapshots = [&]() {
        // The t = 0 table is always written; later ones when their time is
        // reached (after any remesh at that step).
        bool due = state.step_index == 0 && (next_snapshot >= snapshot_times.size() ||
                                             snapshot_times[next_snapshot] > time_eps);
        while (next_snapshot < snapshot_times.size() &&
               snapshot_times[next_snapshot] <= state.time + time_eps) {
            ++next_snapshot;
            due = true;
        }
        if (due) sink.snapshot(state.time, snapshot_records(state), state.mesh);
    };

    emit_snapshots();
    sink.trajectories(trajectory_records(state));

    int last_epoch = state.epoch();
    while (state.time + time_eps < duration) {
        step(state, spec.model, spec.numerics, field, scheme);
        if (state.epoch() != last_epoch) {
            ++summary.remesh_count;
            last_epoch = state.epoch();
        }
        ++summary.steps;

        const double total = state.total_pedestrians();
        if (std::abs(total - initial_total) > 1e-6 * scale) {
            throw std::runtime_error("conservation violated at step " +
                                     std::to_string(state.step_index) + ": " +
                                     std::to_string(initial_total) + " -> " +
                                     std::to_string(total));
        }

        emit_snapshots();
        sink.trajectories(trajectory_records(state));
    }

    sink.finish();
    summary.final_time = state.time;
    summary.final_total = state.total_pedestrians();
    if (final_state) *final_state = std::move(state);
    return summary;
}

}  // namespace crowdlag
