#pragma once

#include <array>
#include <vector>

#include "crowdlag/geometry.hpp"

namespace crowdlag {

// Staggered triangular mesh: densities live on cell centres, velocities on
// vertices. Topology is immutable between remeshes; only vertex positions
// move. Per-vertex and per-cell computations read a frozen snapshot and may
// run concurrently; the step sequencing is a serial barrier contract.
struct Mesh {
    std::vector<Point2> vertices;
    std::vector<std::array<int, 3>> cells;          // CCW at construction
    std::vector<std::vector<int>> vertex_to_cells;  // inverse of the cell->vertex relation
    int epoch = 0;                                  // remesh generation counter

    Mesh() = default;
    // Validates indices, finiteness and construction-time orientation, and
    // builds the vertex->cell adjacency.
    Mesh(std::vector<Point2> verts, std::vector<std::array<int, 3>> cell_list, int epoch = 0);

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int cell_count() const { return static_cast<int>(cells.size()); }
    Triangle cell_triangle(int cell_id) const;
};

struct CellState {
    double n_peds = 0.0;        // persons; constant under vertex motion
    double area = 0.0;          // m^2
    double density = 0.0;       // persons/m^2
    double initial_area = 0.0;  // frozen at (re)mesh construction
    bool degenerate = false;    // area collapsed below eps^2; forces a remesh
};

struct VertexState {
    double density = 0.0;       // persons/m^2
    Vec2 density_gradient{};    // persons/m^3
    double speed = 0.0;         // m/s
    Vec2 velocity{};            // m/s
};

enum class GradientScheme {
    LineGradient,  // finite difference along each vertex-to-centroid line (default)
    PaperLiteral,  // componentwise reciprocal form, axis-clamped
};

struct GradientDiagnostics {
    int clamped_components = 0;
};

// Axis clamp threshold for the componentwise gradient scheme (metres).
inline constexpr double kAxisEps = 1e-6;

// Regular lattice of equilateral triangles, alternating up/down, anchored so
// that two lattices with the same anchor and cell area generate bit-identical
// cells where they overlap.
struct RegularLattice {
    Point2 anchor{};
    double side = 0.0;
    double row_height = 0.0;
    int row_begin = 0, row_end = 0;  // vertex rows, inclusive
    int col_begin = 0, col_end = 0;  // vertex columns, inclusive

    static RegularLattice covering(Interval x_range, Interval y_range, double cell_area,
                                   Point2 anchor);

    int rows() const { return row_end - row_begin + 1; }
    int cols() const { return col_end - col_begin + 1; }
    int strip_count() const { return row_end - row_begin; }
    int cells_per_strip() const { return 2 * (cols() - 1); }
    int cell_count() const { return strip_count() * cells_per_strip(); }
    int vertex_count() const { return rows() * cols(); }

    Point2 vertex_position(int r, int c) const;
    int vertex_index(int r, int c) const;
    std::array<int, 3> cell_vertices(int r, int c, bool up) const;
    int cell_index(int r, int c, bool up) const;
    Triangle cell_triangle_at(int r, int c, bool up) const;

    Mesh to_mesh(int epoch = 0) const;

    // Appends the indices of cells whose bounding box may overlap [lo, hi].
    void cells_overlapping(Point2 lo, Point2 hi, std::vector<int>& out) const;
    // Index of a cell containing p, or -1.
    int locate(Point2 p) const;
};

// Side length of an equilateral triangle with the given area.
double equilateral_side(double cell_area);

// Regular equilateral mesh whose union covers the requested rectangle.
// Rejects nonpositive cell_area and inverted ranges.
Mesh build_regular_mesh(Interval x_range, Interval y_range, double cell_area);

// Recomputes areas from current vertex positions and densities as N/A.
// Cells with area <= eps^2 are marked degenerate (density 0) and force a
// remesh before the next velocity evaluation.
void cell_density_update(const Mesh& mesh, std::vector<CellState>& states,
                         double eps = kGeomEps);

// Inverse-distance weights over the incident cells of a vertex; sums to 1.
// A centroid within eps of the vertex takes the whole weight.
std::vector<double> vertex_weights(const Mesh& mesh, int vertex_id, double eps = kGeomEps);

// Weighted average of incident cell densities.
double vertex_density(const Mesh& mesh, const std::vector<CellState>& states, int vertex_id);

Vec2 vertex_density_gradient(const Mesh& mesh, const std::vector<CellState>& states,
                             int vertex_id,
                             GradientScheme scheme = GradientScheme::LineGradient,
                             GradientDiagnostics* diag = nullptr);

}  // namespace crowdlag
