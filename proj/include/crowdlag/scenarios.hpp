#pragma once

#include <string>
#include <vector>

#include "crowdlag/flowmodel.hpp"
#include "crowdlag/mesh.hpp"
#include "crowdlag/params.hpp"

namespace crowdlag {

enum class CaseId { Straight, Zigzag, Spiral };

enum class IcKind {
    LinearCone,       // jam density at the centre, linear to zero at the rim
    ConstantHalfJam,  // half jam density inside the disc
};

struct ScenarioSpec {
    CaseId case_id = CaseId::Straight;
    ModelParams model;
    NumericalParams numerics;
    Point2 group_center{30.0, 60.0};  // absolute (m)
    double group_radius = 20.0;       // m
    IcKind ic_kind = IcKind::LinearCone;
    int quadrature_depth = 3;  // each cell split into 4^k subtriangles

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

const char* case_name(CaseId id);
CaseId case_from_name(const std::string& name);

// Reference setup for a case: default model and numerical parameters, group
// of radius 20 m (10 m for the spiral case) centred 30 m left of the domain
// centre.
ScenarioSpec scenario_preset(CaseId id);

StaticField static_field_for_case(CaseId id, const ModelParams& p);

double initial_density(Point2 p, const ScenarioSpec& spec);

// Closed-form integral of the initial density field.
double analytic_mass(const ScenarioSpec& spec);

// Integrates the initial density over every cell with a fixed-depth
// subdivision quadrature (4^k subtriangles, density sampled at their
// centroids). Fails if the support disc is not inside the mesh.
std::vector<CellState> populate_cells(const Mesh& mesh, const ScenarioSpec& spec);

// Exact streamline of a static field through `start`, sampled as a polyline
// for test comparison. `param_end` is the final x coordinate for the
// straight and zig-zag cases and the total swept angle (radians) for the
// spiral case.
std::vector<Point2> analytic_streamline(CaseId id, Point2 start, const ModelParams& p,
                                        double param_end, int samples);

}  // namespace crowdlag
