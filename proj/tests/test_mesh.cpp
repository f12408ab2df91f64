#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "crowdlag/mesh.hpp"

using namespace crowdlag;

namespace {

// Two cells sharing vertex 0: centroid of cell 0 at (d1, 0), centroid of
// cell 1 at (0, d2).
Mesh two_cell_fan(double d1, double d2) {
    const double h = 0.5;
    std::vector<Point2> verts{
        {0, 0}, {1.5 * d1, -h}, {1.5 * d1, h}, {h, 1.5 * d2}, {-h, 1.5 * d2}};
    return Mesh(std::move(verts), {{0, 1, 2}, {0, 3, 4}});
}

}  // namespace

TEST_CASE("mesh construction validates its invariants") {
    CHECK_THROWS_AS(Mesh({{0, 0}, {1, 0}}, {{0, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 1}}), std::invalid_argument);
    // clockwise cell rejected at construction
    CHECK_THROWS_AS(Mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}}), std::invalid_argument);

    const Mesh m({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}, {1, 3, 2}});
    REQUIRE(m.vertex_to_cells.size() == 4);
    CHECK(m.vertex_to_cells[0] == std::vector<int>{0});
    CHECK(m.vertex_to_cells[1] == std::vector<int>{0, 1});
    CHECK(m.vertex_to_cells[2] == std::vector<int>{0, 1});
    CHECK(m.vertex_to_cells[3] == std::vector<int>{1});
}

TEST_CASE("regular mesh covers the domain with equal CCW cells") {
    const double area = 56.9;
    const Mesh m = build_regular_mesh({0.0, 120.0}, {0.0, 120.0}, area);

    double total = 0.0;
    const double side = equilateral_side(area);
    CHECK(side == doctest::Approx(11.46).epsilon(1e-3));
    for (int ci = 0; ci < m.cell_count(); ++ci) {
        const Triangle t = m.cell_triangle(ci);
        CHECK(std::abs(triangle_area(t) - area) < 1e-6);
        CHECK(signed_area(t) > 0.0);
        // edge lengths match the closed-form side
        CHECK(distance(t.v1, t.v2) == doctest::Approx(side).epsilon(1e-9));
        CHECK(distance(t.v2, t.v3) == doctest::Approx(side).epsilon(1e-9));
        total += triangle_area(t);
    }
    CHECK(total >= 120.0 * 120.0);
    CHECK(m.cell_count() >= static_cast<int>(std::ceil(14400.0 / area)));

    // random points of the requested rectangle lie in some cell
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 120.0);
    const RegularLattice lat = RegularLattice::covering({0.0, 120.0}, {0.0, 120.0}, area,
                                                        {0.0, 0.0});
    for (int i = 0; i < 500; ++i) {
        const Point2 p{u(rng), u(rng)};
        CHECK(lat.locate(p) >= 0);
    }

    CHECK_THROWS_AS(build_regular_mesh({0.0, 10.0}, {0.0, 10.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_regular_mesh({0.0, 10.0}, {0.0, 10.0}, -5.0), std::invalid_argument);
}

TEST_CASE("lattice cell lookup agrees with the generated mesh") {
    const RegularLattice lat =
        RegularLattice::covering({0.0, 30.0}, {0.0, 30.0}, 8.0, {0.0, 0.0});
    const Mesh m = lat.to_mesh();
    REQUIRE(m.cell_count() == lat.cell_count());
    for (int ci = 0; ci < m.cell_count(); ++ci) {
        const Point2 c = centroid(m.cell_triangle(ci));
        CHECK(lat.locate(c) == ci);
    }
}

TEST_CASE("cell density update") {
    Mesh m = build_regular_mesh({0.0, 30.0}, {0.0, 30.0}, 56.9);
    std::vector<CellState> states(static_cast<size_t>(m.cell_count()));
    states[0].n_peds = 56.9 * 2.7;
    cell_density_update(m, states);
    CHECK(states[0].density == doctest::Approx(2.7).epsilon(1e-12));
    CHECK(states[1].density == 0.0);
    CHECK(!states[0].degenerate);

    // rigid translation leaves densities unchanged
    const std::vector<CellState> before = states;
    for (Point2& v : m.vertices) v += Vec2{12.0, -3.0};
    cell_density_update(m, states);
    for (size_t i = 0; i < states.size(); ++i) {
        CHECK(states[i].density ==
              doctest::Approx(before[i].density).epsilon(1e-12).scale(1.0));
    }

    // collapse one cell onto a segment: degenerate marker
    const auto& cell = m.cells[0];
    m.vertices[static_cast<size_t>(cell[2])] = m.vertices[static_cast<size_t>(cell[0])];
    cell_density_update(m, states);
    CHECK(states[0].degenerate);
    CHECK(states[0].density == 0.0);
}

TEST_CASE("vertex weights") {
    SUBCASE("interior vertex of the fresh regular mesh gets 1/6 each") {
        const Mesh m = build_regular_mesh({0.0, 60.0}, {0.0, 60.0}, 56.9);
        int interior = -1;
        for (int v = 0; v < m.vertex_count(); ++v) {
            if (m.vertex_to_cells[static_cast<size_t>(v)].size() == 6) {
                interior = v;
                break;
            }
        }
        REQUIRE(interior >= 0);
        const auto w = vertex_weights(m, interior);
        REQUIRE(w.size() == 6);
        for (const double wi : w) CHECK(wi == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    }

    SUBCASE("single incident cell takes the full weight") {
        const Mesh m({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
        const auto w = vertex_weights(m, 0);
        REQUIRE(w.size() == 1);
        CHECK(w[0] == 1.0);
    }

    SUBCASE("distances d and 2d give weights 2/3 and 1/3") {
        const Mesh m = two_cell_fan(1.0, 2.0);
        REQUIRE(m.vertex_to_cells[0].size() == 2);
        const double d1 = distance(centroid(m.cell_triangle(0)), m.vertices[0]);
        const double d2 = distance(centroid(m.cell_triangle(1)), m.vertices[0]);
        REQUIRE(d1 == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(d2 == doctest::Approx(2.0).epsilon(1e-12));
        const auto w = vertex_weights(m, 0);
        CHECK(w[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(w[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }

    SUBCASE("weights sum to one and are permutation-equivariant") {
        const Mesh m = build_regular_mesh({0.0, 60.0}, {0.0, 60.0}, 21.3);
        for (int v = 0; v < m.vertex_count(); ++v) {
            const auto w = vertex_weights(m, v);
            double sum = 0.0;
            for (const double wi : w) {
                CHECK(wi > 0.0);
                sum += wi;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }

    SUBCASE("centroid within eps of the vertex takes everything") {
        const Mesh limit({{0, 0}, {3e-10, 0}, {0, 3e-10}, {5, 5}, {-5, 5}},
                         {{0, 1, 2}, {0, 3, 4}});
        const auto w = vertex_weights(limit, 0);
        REQUIRE(w.size() == 2);
        CHECK(w[0] == 1.0);
        CHECK(w[1] == 0.0);
    }

    SUBCASE("vertex without incident cells is rejected") {
        Mesh m = build_regular_mesh({0.0, 30.0}, {0.0, 30.0}, 56.9);
        m.vertex_to_cells[0].clear();  // simulate a stray vertex
        CHECK_THROWS_AS(vertex_weights(m, 0), std::invalid_argument);
    }
}

TEST_CASE("vertex density") {
    const Mesh m = build_regular_mesh({0.0, 60.0}, {0.0, 60.0}, 56.9);
    std::vector<CellState> states(static_cast<size_t>(m.cell_count()));

    SUBCASE("constant field is reproduced") {
        for (auto& s : states) s.n_peds = 2.5;
        cell_density_update(m, states);
        const double expect = states[0].density;
        for (int v = 0; v < m.vertex_count(); ++v) {
            CHECK(vertex_density(m, states, v) == doctest::Approx(expect).epsilon(1e-12));
        }
    }

    SUBCASE("half jam mix") {
        const Mesh fan = two_cell_fan(1.0, 1.0);
        std::vector<CellState> fs(2);
        fs[0].density = 0.0;
        fs[1].density = 5.4;
        CHECK(vertex_density(fan, fs, 0) == doctest::Approx(2.7).epsilon(1e-12));
    }

    SUBCASE("matches an independent dot product and stays within bounds") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(0.0, 5.4);
        for (auto& s : states) s.density = u(rng);
        for (int v = 0; v < m.vertex_count(); ++v) {
            const auto& incident = m.vertex_to_cells[static_cast<size_t>(v)];
            const auto w = vertex_weights(m, v);
            double expect = 0.0, lo = 1e300, hi = -1e300;
            for (size_t i = 0; i < incident.size(); ++i) {
                const double rho = states[static_cast<size_t>(incident[i])].density;
                expect += w[i] * rho;
                lo = std::min(lo, rho);
                hi = std::max(hi, rho);
            }
            const double got = vertex_density(m, states, v);
            CHECK(got == doctest::Approx(expect).epsilon(1e-12));
            CHECK(got >= lo - 1e-12);
            CHECK(got <= hi + 1e-12);
        }
    }

    SUBCASE("monotone in any incident density") {
        const int v = 40;
        const auto& incident = m.vertex_to_cells[static_cast<size_t>(v)];
        REQUIRE(!incident.empty());
        for (auto& s : states) s.density = 1.0;
        const double base = vertex_density(m, states, v);
        states[static_cast<size_t>(incident[0])].density = 2.0;
        CHECK(vertex_density(m, states, v) > base);
    }
}

TEST_CASE("vertex density gradient") {
    const Mesh m = build_regular_mesh({0.0, 80.0}, {0.0, 80.0}, 56.9);
    std::vector<CellState> states(static_cast<size_t>(m.cell_count()));
    int interior = -1;
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (m.vertex_to_cells[static_cast<size_t>(v)].size() == 6) {
            const Point2 p = m.vertices[static_cast<size_t>(v)];
            if (p.x > 20 && p.x < 60 && p.y > 20 && p.y < 60) {
                interior = v;
                break;
            }
        }
    }
    REQUIRE(interior >= 0);

    SUBCASE("uniform field gives zero under both schemes") {
        for (auto& s : states) s.density = 3.3;
        for (const auto scheme : {GradientScheme::LineGradient, GradientScheme::PaperLiteral}) {
            const Vec2 g = vertex_density_gradient(m, states, interior, scheme);
            CHECK(std::abs(g.x) < 1e-12);
            CHECK(std::abs(g.y) < 1e-12);
        }
    }

    SUBCASE("linear field rho = c*x, values frozen from direct evaluation") {
        const double c = 0.11;
        for (int ci = 0; ci < m.cell_count(); ++ci) {
            states[static_cast<size_t>(ci)].density = c * centroid(m.cell_triangle(ci)).x;
        }
        // The along-line average recovers half the true gradient on the
        // 6-cell symmetric stencil; the componentwise form recovers 2/3.
        const Vec2 line = vertex_density_gradient(m, states, interior,
                                                  GradientScheme::LineGradient);
        CHECK(line.x == doctest::Approx(0.5 * c).epsilon(1e-9));
        CHECK(std::abs(line.y) < 1e-12);

        GradientDiagnostics diag;
        const Vec2 literal = vertex_density_gradient(m, states, interior,
                                                     GradientScheme::PaperLiteral, &diag);
        CHECK(literal.x == doctest::Approx(2.0 * c / 3.0).epsilon(1e-9));
        CHECK(std::abs(literal.y) < 1e-9);
        // the two cells straight above/below the vertex have centroids with
        // dx = 0: the clamp path must fire for them
        CHECK(diag.clamped_components >= 2);
    }

    SUBCASE("single incident cell, centroid offset (d, 0)") {
        const double d = 2.0;
        // triangle (0,0),(3d/2,h),(3d/2,-h) has centroid (d, 0)
        const Mesh one({{0, 0}, {3.0, -0.9}, {3.0, 0.9}}, {{0, 1, 2}});
        REQUIRE(centroid(one.cell_triangle(0)).x == doctest::Approx(d));
        REQUIRE(centroid(one.cell_triangle(0)).y == doctest::Approx(0.0));
        std::vector<CellState> s(1);
        s[0].density = 1.7;  // rho_v equals the single cell density, drho = 0
        const Vec2 g = vertex_density_gradient(one, s, 0, GradientScheme::LineGradient);
        CHECK(g.x == doctest::Approx(0.0));
        CHECK(g.y == doctest::Approx(0.0));
    }

    SUBCASE("clamped axis component is deterministic for an exact zero") {
        // two incident cells; only the first centroid sits exactly on the y-axis
        const Mesh fan({{0, 0}, {1.5, 4.0}, {-1.5, 2.0}, {6.0, -1.0}, {6.0, 2.0}},
                       {{0, 1, 2}, {0, 3, 4}});
        const Point2 c0 = centroid(fan.cell_triangle(0));
        REQUIRE(c0.x == 0.0);
        REQUIRE(centroid(fan.cell_triangle(1)).y != 0.0);
        std::vector<CellState> s(2);
        s[0].density = 2.0;
        s[1].density = 1.0;
        GradientDiagnostics diag;
        const Vec2 g = vertex_density_gradient(fan, s, 0, GradientScheme::PaperLiteral, &diag);
        CHECK(diag.clamped_components == 1);
        // clamped reciprocal is +1/kAxisEps for dx = +0, so the x component
        // is dominated by w0 * (rho0 - rho_v) * 1e6
        const auto w = vertex_weights(fan, 0);
        const double rho_v = w[0] * 2.0 + w[1] * 1.0;
        const double expect_x = w[0] * (2.0 - rho_v) * 1e6 +
                                w[1] * (1.0 - rho_v) / (centroid(fan.cell_triangle(1)).x);
        CHECK(g.x == doctest::Approx(expect_x).epsilon(1e-9));
    }
}

TEST_CASE("pedestrian counts are untouched by vertex motion") {
    Mesh m = build_regular_mesh({0.0, 40.0}, {0.0, 40.0}, 20.0);
    std::vector<CellState> states(static_cast<size_t>(m.cell_count()));
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (auto& s : states) s.n_peds = u(rng);
    double before = 0.0;
    for (const auto& s : states) before += s.n_peds;

    std::uniform_real_distribution<double> move(-0.5, 0.5);
    for (int k = 0; k < 10; ++k) {
        for (Point2& v : m.vertices) v += Vec2{move(rng), move(rng)};
        cell_density_update(m, states);
        double after = 0.0;
        for (const auto& s : states) after += s.n_peds;
        CHECK(after == before);  // bit-identical
    }
}
