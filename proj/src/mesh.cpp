#include "crowdlag/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crowdlag {

Mesh::Mesh(std::vector<Point2> verts, std::vector<std::array<int, 3>> cell_list, int epoch_)
    : vertices(std::move(verts)), cells(std::move(cell_list)), epoch(epoch_) {
    const int nv = vertex_count();
    for (const Point2& p : vertices) {
        if (!is_finite(p)) throw std::invalid_argument("mesh vertex is not finite");
    }
    vertex_to_cells.assign(static_cast<size_t>(nv), {});
    for (int ci = 0; ci < cell_count(); ++ci) {
        const auto& c = cells[static_cast<size_t>(ci)];
        for (int k = 0; k < 3; ++k) {
            if (c[static_cast<size_t>(k)] < 0 || c[static_cast<size_t>(k)] >= nv) {
                throw std::invalid_argument("cell " + std::to_string(ci) +
                                            " references an invalid vertex");
            }
        }
        if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2]) {
            throw std::invalid_argument("cell " + std::to_string(ci) +
                                        " has repeated vertices");
        }
        if (signed_area(cell_triangle(ci)) <= 0.0) {
            throw std::invalid_argument("cell " + std::to_string(ci) +
                                        " is not counter-clockwise at construction");
        }
        for (int k = 0; k < 3; ++k) {
            vertex_to_cells[static_cast<size_t>(c[static_cast<size_t>(k)])].push_back(ci);
        }
    }
}

Triangle Mesh::cell_triangle(int cell_id) const {
    const auto& c = cells[static_cast<size_t>(cell_id)];
    return {vertices[static_cast<size_t>(c[0])], vertices[static_cast<size_t>(c[1])],
            vertices[static_cast<size_t>(c[2])]};
}

double equilateral_side(double cell_area) {
    return std::sqrt(4.0 * cell_area / std::sqrt(3.0));
}

namespace {

inline int parity(int r) { return ((r % 2) + 2) % 2; }

inline int floor_div(double v, double step) {
    return static_cast<int>(std::floor(v / step));
}

inline int ceil_div(double v, double step) {
    return static_cast<int>(std::ceil(v / step));
}

}  // namespace

RegularLattice RegularLattice::covering(Interval x_range, Interval y_range, double cell_area,
                                        Point2 anchor_) {
    if (!(cell_area > 0.0)) throw std::invalid_argument("cell_area must be positive");
    if (x_range.lo > x_range.hi || y_range.lo > y_range.hi) {
        throw std::invalid_argument("mesh range is inverted");
    }
    RegularLattice lat;
    lat.anchor = anchor_;
    lat.side = equilateral_side(cell_area);
    lat.row_height = 0.5 * std::sqrt(3.0) * lat.side;
    // One extra column on each side covers the slanted strip ends; rows tile
    // the y-range exactly.
    lat.col_begin = floor_div(x_range.lo - anchor_.x, lat.side) - 1;
    lat.col_end = ceil_div(x_range.hi - anchor_.x, lat.side) + 1;
    lat.row_begin = floor_div(y_range.lo - anchor_.y, lat.row_height);
    lat.row_end = ceil_div(y_range.hi - anchor_.y, lat.row_height);
    if (lat.col_end < lat.col_begin + 1) lat.col_end = lat.col_begin + 1;
    if (lat.row_end < lat.row_begin + 1) lat.row_end = lat.row_begin + 1;
    return lat;
}

Point2 RegularLattice::vertex_position(int r, int c) const {
    const double offset = parity(r) ? 0.5 : 0.0;
    return {anchor.x + (static_cast<double>(c) + offset) * side,
            anchor.y + static_cast<double>(r) * row_height};
}

int RegularLattice::vertex_index(int r, int c) const {
    return (r - row_begin) * cols() + (c - col_begin);
}

std::array<int, 3> RegularLattice::cell_vertices(int r, int c, bool up) const {
    // Strip between vertex rows r and r+1; layout depends on which row is
    // offset by half a side.
    if (parity(r) == 0) {
        if (up) return {vertex_index(r, c), vertex_index(r, c + 1), vertex_index(r + 1, c)};
        return {vertex_index(r, c + 1), vertex_index(r + 1, c + 1), vertex_index(r + 1, c)};
    }
    if (up) return {vertex_index(r, c), vertex_index(r, c + 1), vertex_index(r + 1, c + 1)};
    return {vertex_index(r, c), vertex_index(r + 1, c + 1), vertex_index(r + 1, c)};
}

int RegularLattice::cell_index(int r, int c, bool up) const {
    return (r - row_begin) * cells_per_strip() + 2 * (c - col_begin) + (up ? 0 : 1);
}

Triangle RegularLattice::cell_triangle_at(int r, int c, bool up) const {
    if (parity(r) == 0) {
        if (up) {
            return {vertex_position(r, c), vertex_position(r, c + 1), vertex_position(r + 1, c)};
        }
        return {vertex_position(r, c + 1), vertex_position(r + 1, c + 1),
                vertex_position(r + 1, c)};
    }
    if (up) {
        return {vertex_position(r, c), vertex_position(r, c + 1), vertex_position(r + 1, c + 1)};
    }
    return {vertex_position(r, c), vertex_position(r + 1, c + 1), vertex_position(r + 1, c)};
}

Mesh RegularLattice::to_mesh(int epoch) const {
    std::vector<Point2> verts;
    verts.reserve(static_cast<size_t>(vertex_count()));
    for (int r = row_begin; r <= row_end; ++r) {
        for (int c = col_begin; c <= col_end; ++c) {
            verts.push_back(vertex_position(r, c));
        }
    }
    std::vector<std::array<int, 3>> cells;
    cells.reserve(static_cast<size_t>(cell_count()));
    for (int r = row_begin; r < row_end; ++r) {
        for (int c = col_begin; c < col_end; ++c) {
            cells.push_back(cell_vertices(r, c, true));
            cells.push_back(cell_vertices(r, c, false));
        }
    }
    return Mesh(std::move(verts), std::move(cells), epoch);
}

void RegularLattice::cells_overlapping(Point2 lo, Point2 hi, std::vector<int>& out) const {
    const int s0 = std::max(row_begin, floor_div(lo.y - anchor.y, row_height) - 1);
    const int s1 = std::min(row_end - 1, ceil_div(hi.y - anchor.y, row_height));
    const int c0 = std::max(col_begin, floor_div(lo.x - anchor.x, side) - 2);
    const int c1 = std::min(col_end - 1, ceil_div(hi.x - anchor.x, side) + 1);
    for (int r = s0; r <= s1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            out.push_back(cell_index(r, c, true));
            out.push_back(cell_index(r, c, false));
        }
    }
}

int RegularLattice::locate(Point2 p) const {
    const int s = floor_div(p.y - anchor.y, row_height);
    const int s0 = std::max(row_begin, s - 1);
    const int s1 = std::min(row_end - 1, s + 1);
    const int cg = floor_div(p.x - anchor.x, side);
    const int c0 = std::max(col_begin, cg - 2);
    const int c1 = std::min(col_end - 1, cg + 1);
    for (int r = s0; r <= s1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            for (bool up : {true, false}) {
                if (point_in_triangle(p, cell_triangle_at(r, c, up))) {
                    return cell_index(r, c, up);
                }
            }
        }
    }
    return -1;
}

Mesh build_regular_mesh(Interval x_range, Interval y_range, double cell_area) {
    const RegularLattice lat =
        RegularLattice::covering(x_range, y_range, cell_area, {x_range.lo, y_range.lo});
    return lat.to_mesh(0);
}

void cell_density_update(const Mesh& mesh, std::vector<CellState>& states, double eps) {
    if (static_cast<int>(states.size()) != mesh.cell_count()) {
        throw std::invalid_argument("cell state array does not match the mesh");
    }
    const double degenerate_area = eps * eps;
    for (int ci = 0; ci < mesh.cell_count(); ++ci) {
        CellState& s = states[static_cast<size_t>(ci)];
        s.area = triangle_area(mesh.cell_triangle(ci));
        if (s.area > degenerate_area) {
            s.density = s.n_peds / s.area;
            s.degenerate = false;
        } else {
            s.density = 0.0;
            s.degenerate = true;
        }
    }
}

std::vector<double> vertex_weights(const Mesh& mesh, int vertex_id, double eps) {
    const auto& incident = mesh.vertex_to_cells[static_cast<size_t>(vertex_id)];
    if (incident.empty()) {
        throw std::invalid_argument("vertex " + std::to_string(vertex_id) +
                                    " has no incident cells");
    }
    const Point2 xv = mesh.vertices[static_cast<size_t>(vertex_id)];
    std::vector<double> w(incident.size(), 0.0);
    double sum = 0.0;
    for (size_t i = 0; i < incident.size(); ++i) {
        const double d = distance(centroid(mesh.cell_triangle(incident[i])), xv);
        if (d < eps) {
            // Limit of the inverse-distance formula: the coincident cell
            // takes everything.
            std::fill(w.begin(), w.end(), 0.0);
            w[i] = 1.0;
            return w;
        }
        w[i] = 1.0 / d;
        sum += w[i];
    }
    for (double& wi : w) wi /= sum;
    return w;
}

double vertex_density(const Mesh& mesh, const std::vector<CellState>& states, int vertex_id) {
    const auto& incident = mesh.vertex_to_cells[static_cast<size_t>(vertex_id)];
    const std::vector<double> w = vertex_weights(mesh, vertex_id);
    double rho = 0.0;
    for (size_t i = 0; i < incident.size(); ++i) {
        rho += w[i] * states[static_cast<size_t>(incident[i])].density;
    }
    return rho;
}

Vec2 vertex_density_gradient(const Mesh& mesh, const std::vector<CellState>& states,
                             int vertex_id, GradientScheme scheme, GradientDiagnostics* diag) {
    const auto& incident = mesh.vertex_to_cells[static_cast<size_t>(vertex_id)];
    const std::vector<double> w = vertex_weights(mesh, vertex_id);
    const Point2 xv = mesh.vertices[static_cast<size_t>(vertex_id)];

    double rho_v = 0.0;
    for (size_t i = 0; i < incident.size(); ++i) {
        rho_v += w[i] * states[static_cast<size_t>(incident[i])].density;
    }

    const auto clamped_inverse = [&](double t) {
        if (std::abs(t) < kAxisEps) {
            if (diag) ++diag->clamped_components;
            return std::copysign(1.0 / kAxisEps, t);
        }
        return 1.0 / t;
    };

    Vec2 grad{};
    for (size_t i = 0; i < incident.size(); ++i) {
        const Vec2 d = centroid(mesh.cell_triangle(incident[i])) - xv;
        const double drho = states[static_cast<size_t>(incident[i])].density - rho_v;
        if (scheme == GradientScheme::LineGradient) {
            const double dd = norm_sq(d);
            if (dd < kGeomEps * kGeomEps) continue;  // coincident centroid: drho is 0 anyway
            grad += (w[i] * drho / dd) * d;
        } else {
            grad += (w[i] * drho) * Vec2{clamped_inverse(d.x), clamped_inverse(d.y)};
        }
    }
    return grad;
}

}  // namespace crowdlag
