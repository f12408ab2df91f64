#include "crowdlag/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crowdlag {

const char* case_name(CaseId id) {
    switch (id) {
        case CaseId::Straight: return "straight";
        case CaseId::Zigzag: return "zigzag";
        case CaseId::Spiral: return "spiral";
    }
    return "?";
}

CaseId case_from_name(const std::string& name) {
    if (name == "straight") return CaseId::Straight;
    if (name == "zigzag") return CaseId::Zigzag;
    if (name == "spiral") return CaseId::Spiral;
    throw std::invalid_argument("unknown scenario '" + name +
                                "' (expected straight, zigzag or spiral)");
}

ScenarioSpec scenario_preset(CaseId id) {
    ScenarioSpec spec;
    spec.case_id = id;
    const Point2 domain_center{spec.numerics.domain_x.center(), spec.numerics.domain_y.center()};
    spec.group_center = domain_center + Vec2{-30.0, 0.0};
    if (id == CaseId::Spiral) {
        spec.group_radius = 10.0;
        spec.ic_kind = IcKind::ConstantHalfJam;
    } else {
        spec.group_radius = 20.0;
        spec.ic_kind = IcKind::LinearCone;
    }
    return spec;
}

StaticField static_field_for_case(CaseId id, const ModelParams& p) {
    switch (id) {
        case CaseId::Straight: return StaticField::straight();
        case CaseId::Zigzag: return StaticField::zigzag(p);
        case CaseId::Spiral: return StaticField::spiral(p);
    }
    return StaticField::straight();
}

double initial_density(Point2 p, const ScenarioSpec& spec) {
    const double r = distance(p, spec.group_center);
    if (r >= spec.group_radius) return 0.0;
    if (spec.ic_kind == IcKind::LinearCone) {
        return spec.model.rho_jam * (1.0 - r / spec.group_radius);
    }
    return 0.5 * spec.model.rho_jam;
}

double analytic_mass(const ScenarioSpec& spec) {
    const double r2 = spec.group_radius * spec.group_radius;
    if (spec.ic_kind == IcKind::LinearCone) {
        return spec.model.rho_jam * std::numbers::pi * r2 / 3.0;
    }
    return 0.5 * spec.model.rho_jam * std::numbers::pi * r2;
}

namespace {

double integrate_density(const Triangle& t, const ScenarioSpec& spec, int depth) {
    if (depth <= 0) {
        return initial_density(centroid(t), spec) * triangle_area(t);
    }
    const Point2 m12 = 0.5 * (t.v1 + t.v2);
    const Point2 m23 = 0.5 * (t.v2 + t.v3);
    const Point2 m31 = 0.5 * (t.v3 + t.v1);
    return integrate_density({t.v1, m12, m31}, spec, depth - 1) +
           integrate_density({m12, t.v2, m23}, spec, depth - 1) +
           integrate_density({m31, m23, t.v3}, spec, depth - 1) +
           integrate_density({m12, m23, m31}, spec, depth - 1);
}

}  // namespace

std::vector<CellState> populate_cells(const Mesh& mesh, const ScenarioSpec& spec) {
    if (mesh.cell_count() == 0) throw std::invalid_argument("mesh is empty");

    // Conservative support check: the disc's bounding box must stay one
    // longest-edge away from the vertex bounding box.
    double min_x = mesh.vertices[0].x, max_x = min_x;
    double min_y = mesh.vertices[0].y, max_y = min_y;
    for (const Point2& v : mesh.vertices) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    double max_edge = 0.0;
    for (int ci = 0; ci < mesh.cell_count(); ++ci) {
        const Triangle t = mesh.cell_triangle(ci);
        max_edge = std::max({max_edge, distance(t.v1, t.v2), distance(t.v2, t.v3),
                             distance(t.v3, t.v1)});
    }
    const double r = spec.group_radius;
    const Point2 c = spec.group_center;
    if (c.x - r < min_x + max_edge || c.x + r > max_x - max_edge ||
        c.y - r < min_y + max_edge || c.y + r > max_y - max_edge) {
        throw std::invalid_argument("initial group disc is not inside the mesh");
    }

    std::vector<CellState> states(static_cast<size_t>(mesh.cell_count()));
    for (int ci = 0; ci < mesh.cell_count(); ++ci) {
        CellState& s = states[static_cast<size_t>(ci)];
        const Triangle t = mesh.cell_triangle(ci);
        s.n_peds = integrate_density(t, spec, spec.quadrature_depth);
        s.area = triangle_area(t);
        s.initial_area = s.area;
        s.density = s.area > 0.0 ? s.n_peds / s.area : 0.0;
    }
    return states;
}

std::vector<Point2> analytic_streamline(CaseId id, Point2 start, const ModelParams& p,
                                        double param_end, int samples) {
    if (samples < 2) throw std::invalid_argument("streamline needs at least 2 samples");
    std::vector<Point2> pts;
    pts.reserve(static_cast<size_t>(samples));
    switch (id) {
        case CaseId::Straight: {
            for (int i = 0; i < samples; ++i) {
                const double x = start.x + (param_end - start.x) * i / (samples - 1);
                pts.push_back({x, start.y});
            }
            break;
        }
        case CaseId::Zigzag: {
            const double ab = p.zigzag_a * p.zigzag_b;
            const double c0 = std::cos(p.zigzag_b * start.x);
            for (int i = 0; i < samples; ++i) {
                const double x = start.x + (param_end - start.x) * i / (samples - 1);
                pts.push_back({x, start.y + (c0 - std::cos(p.zigzag_b * x)) / ab});
            }
            break;
        }
        case CaseId::Spiral: {
            const Vec2 d = start - p.spiral_center;
            const double r0 = norm(d);
            if (r0 <= 0.0) throw std::invalid_argument("spiral streamline start is the centre");
            const double theta0 = std::atan2(d.y, d.x);
            for (int i = 0; i < samples; ++i) {
                const double dtheta = param_end * i / (samples - 1);
                const double r = std::max(0.0, r0 - p.spiral_b * dtheta);
                const double theta = theta0 + dtheta;
                pts.push_back(p.spiral_center + r * Vec2{std::cos(theta), std::sin(theta)});
            }
            break;
        }
    }
    return pts;
}

}  // namespace crowdlag
