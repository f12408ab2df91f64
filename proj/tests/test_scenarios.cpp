#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crowdlag/scenarios.hpp"

using namespace crowdlag;

TEST_CASE("presets") {
    const ScenarioSpec s1 = scenario_preset(CaseId::Straight);
    CHECK(s1.group_center.x == 30.0);
    CHECK(s1.group_center.y == 60.0);
    CHECK(s1.group_radius == 20.0);
    CHECK(s1.ic_kind == IcKind::LinearCone);

    const ScenarioSpec s3 = scenario_preset(CaseId::Spiral);
    CHECK(s3.group_radius == 10.0);
    CHECK(s3.ic_kind == IcKind::ConstantHalfJam);

    CHECK(case_from_name("zigzag") == CaseId::Zigzag);
    CHECK_THROWS_AS(case_from_name("sideways"), std::invalid_argument);
}

TEST_CASE("initial density") {
    const ScenarioSpec cone = scenario_preset(CaseId::Straight);
    CHECK(initial_density(cone.group_center, cone) == doctest::Approx(5.4));
    CHECK(initial_density(cone.group_center + Vec2{20.0, 0.0}, cone) == 0.0);
    CHECK(initial_density(cone.group_center + Vec2{10.0, 0.0}, cone) ==
          doctest::Approx(2.7).epsilon(1e-12));
    CHECK(initial_density(cone.group_center + Vec2{100.0, 0.0}, cone) == 0.0);

    const ScenarioSpec disc = scenario_preset(CaseId::Spiral);
    CHECK(initial_density(disc.group_center + Vec2{3.0, 4.0}, disc) ==
          doctest::Approx(2.7));
    CHECK(initial_density(disc.group_center + Vec2{9.99, 0.0}, disc) ==
          doctest::Approx(2.7));
    CHECK(initial_density(disc.group_center + Vec2{10.0, 0.0}, disc) == 0.0);

    SUBCASE("radially symmetric") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> ur(0.0, 25.0);
        std::uniform_real_distribution<double> ua(0.0, 2.0 * std::numbers::pi);
        for (const ScenarioSpec& spec : {cone, disc}) {
            for (int i = 0; i < 200; ++i) {
                const double r = ur(rng);
                const double a1 = ua(rng), a2 = ua(rng);
                const double rho1 = initial_density(
                    spec.group_center + r * Vec2{std::cos(a1), std::sin(a1)}, spec);
                const double rho2 = initial_density(
                    spec.group_center + r * Vec2{std::cos(a2), std::sin(a2)}, spec);
                CHECK(rho1 == doctest::Approx(rho2).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("populate_cells mass against the closed forms") {
    SUBCASE("cone: rho_jam * pi * R0^2 / 3") {
        const ScenarioSpec spec = scenario_preset(CaseId::Straight);
        const Mesh mesh = build_regular_mesh(spec.numerics.domain_x, spec.numerics.domain_y,
                                             spec.numerics.cell_area);
        const auto cells = populate_cells(mesh, spec);
        double total = 0.0;
        for (const auto& c : cells) total += c.n_peds;
        const double expect = 5.4 * std::numbers::pi * 400.0 / 3.0;
        CHECK(analytic_mass(spec) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(total - expect) / expect < 0.01);
    }

    SUBCASE("disc: rho_jam/2 * pi * R0^2") {
        const ScenarioSpec spec = scenario_preset(CaseId::Spiral);
        const Mesh mesh = build_regular_mesh(spec.numerics.domain_x, spec.numerics.domain_y,
                                             spec.numerics.cell_area);
        const auto cells = populate_cells(mesh, spec);
        double total = 0.0;
        for (const auto& c : cells) total += c.n_peds;
        const double expect = 2.7 * std::numbers::pi * 100.0;
        CHECK(analytic_mass(spec) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(total - expect) / expect < 0.01);
    }

    SUBCASE("zero field populates zero counts") {
        ScenarioSpec spec = scenario_preset(CaseId::Straight);
        spec.group_center = {30.0, 30.0};
        spec.group_radius = 1e-6;  // vanishing support
        const Mesh mesh = build_regular_mesh({0.0, 60.0}, {0.0, 60.0}, 56.9);
        const auto cells = populate_cells(mesh, spec);
        double total = 0.0;
        for (const auto& c : cells) total += c.n_peds;
        CHECK(total < 1e-6);
        for (const auto& c : cells) {
            CHECK(c.initial_area == c.area);
        }
    }

    SUBCASE("support disc outside the mesh is rejected") {
        ScenarioSpec spec = scenario_preset(CaseId::Straight);
        const Mesh mesh = build_regular_mesh({0.0, 50.0}, {0.0, 50.0}, 56.9);
        CHECK_THROWS_AS(populate_cells(mesh, spec), std::invalid_argument);
    }

    SUBCASE("deeper quadrature reduces the mass error on average") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        double err_k1 = 0.0, err_k3 = 0.0;
        for (int i = 0; i < 6; ++i) {
            ScenarioSpec spec = scenario_preset(CaseId::Straight);
            spec.group_center += Vec2{u(rng), u(rng)};
            const Mesh mesh = build_regular_mesh(spec.numerics.domain_x,
                                                 spec.numerics.domain_y,
                                                 spec.numerics.cell_area);
            const double expect = analytic_mass(spec);
            for (const int k : {1, 3}) {
                spec.quadrature_depth = k;
                const auto cells = populate_cells(mesh, spec);
                double total = 0.0;
                for (const auto& c : cells) total += c.n_peds;
                (k == 1 ? err_k1 : err_k3) += std::abs(total - expect) / expect;
            }
        }
        CHECK(err_k3 < err_k1);
    }
}

TEST_CASE("analytic streamlines") {
    const ModelParams p;

    SUBCASE("straight is a horizontal line") {
        const auto line = analytic_streamline(CaseId::Straight, {0.0, 5.0}, p, 100.0, 11);
        REQUIRE(line.size() == 11);
        for (const Point2& q : line) CHECK(q.y == 5.0);
        CHECK(line.front().x == 0.0);
        CHECK(line.back().x == 100.0);
    }

    SUBCASE("zigzag oscillates between y0 and y0 + 2/(ab)") {
        const double y0 = 40.0;
        const auto curve =
            analytic_streamline(CaseId::Zigzag, {0.0, y0}, p, 400.0, 40001);
        double lo = 1e300, hi = -1e300;
        for (const Point2& q : curve) {
            lo = std::min(lo, q.y);
            hi = std::max(hi, q.y);
        }
        const double amplitude = 2.0 / (p.zigzag_a * p.zigzag_b);
        CHECK(amplitude == doctest::Approx(8.0).epsilon(1e-12));
        CHECK(lo == doctest::Approx(y0).epsilon(1e-6));
        CHECK(hi == doctest::Approx(y0 + amplitude).epsilon(1e-6));

        // period 2*pi/b, peaks where sin(bx) = 0
        const double period = 2.0 * std::numbers::pi / p.zigzag_b;
        CHECK(period == doctest::Approx(4.0 * std::numbers::pi * std::numbers::pi)
                            .epsilon(1e-12));
        const auto y_at = [&](double x) {
            return y0 + (1.0 - std::cos(p.zigzag_b * x)) / (p.zigzag_a * p.zigzag_b);
        };
        CHECK(y_at(period) == doctest::Approx(y0).epsilon(1e-9));
        CHECK(y_at(0.5 * period) == doctest::Approx(y0 + amplitude).epsilon(1e-9));
    }

    SUBCASE("spiral reaches the centre after r0/b radians") {
        const Point2 start{70.0, 60.0};  // r0 = 10 from the centre (60,60)
        const double dtheta = 10.0 / p.spiral_b;
        CHECK(dtheta == doctest::Approx(50.0));
        const auto curve = analytic_streamline(CaseId::Spiral, start, p, dtheta, 5001);
        CHECK(distance(curve.front(), start) < 1e-12);
        CHECK(distance(curve.back(), p.spiral_center) < 1e-9);
        // radius decreases monotonically along the curve
        double prev = 1e300;
        for (const Point2& q : curve) {
            const double r = distance(q, p.spiral_center);
            CHECK(r <= prev + 1e-12);
            prev = r;
        }
        CHECK_THROWS_AS(analytic_streamline(CaseId::Spiral, p.spiral_center, p, 1.0, 10),
                        std::invalid_argument);
    }
}
