#include "crowdlag/flowmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace crowdlag {

double fundamental_speed(double rho, const ModelParams& p) {
    if (rho < 0.0 || !std::isfinite(rho)) {
        throw std::invalid_argument("density must be finite and nonnegative");
    }
    return std::max(0.0, p.v_free * (1.0 - rho / p.rho_jam));
}

Vec2 static_field_straight(Point2) {
    return {1.0, 0.0};
}

Vec2 static_field_zigzag(Point2 x, const ModelParams& p) {
    const Vec2 e{p.zigzag_a, std::sin(p.zigzag_b * x.x)};
    return e / norm(e);
}

Vec2 static_field_spiral(Point2 x, const ModelParams& p, double eps) {
    const Vec2 d = x - p.spiral_center;
    const double r = norm(d);
    if (r < eps) return {0.0, 0.0};
    // Radial component -b*r (inward), tangential +r^2 (counter-clockwise):
    // streamlines satisfy r = r0 - b*(theta - theta0).
    const Vec2 e{-p.spiral_b * d.x - r * d.y, -p.spiral_b * d.y + r * d.x};
    return e / norm(e);
}

Vec2 compose_velocity(Vec2 e_stat, Vec2 grad_rho, double rho, const ModelParams& p,
                      double dir_eps) {
    const double speed = fundamental_speed(rho, p);
    const Vec2 dir = e_stat - p.beta_dyn * grad_rho;
    const double n = norm(dir);
    if (n < dir_eps) return {0.0, 0.0};
    return (speed / n) * dir;
}

StaticField StaticField::straight() {
    return StaticField(FieldKind::Straight, ModelParams{}, nullptr);
}

StaticField StaticField::zigzag(const ModelParams& p) {
    return StaticField(FieldKind::Zigzag, p, nullptr);
}

StaticField StaticField::spiral(const ModelParams& p) {
    return StaticField(FieldKind::Spiral, p, nullptr);
}

StaticField StaticField::custom(CustomFn fn) {
    if (!fn) throw std::invalid_argument("custom static field requires a callable");
    return StaticField(FieldKind::Custom, ModelParams{}, std::move(fn));
}

Vec2 StaticField::operator()(Point2 x) const {
    switch (kind_) {
        case FieldKind::Straight: return static_field_straight(x);
        case FieldKind::Zigzag: return static_field_zigzag(x, params_);
        case FieldKind::Spiral: return static_field_spiral(x, params_);
        case FieldKind::Custom: return custom_(x);
    }
    return {0.0, 0.0};
}

}  // namespace crowdlag
