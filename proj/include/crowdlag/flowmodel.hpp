#pragma once

#include <functional>

#include "crowdlag/params.hpp"

namespace crowdlag {

// Direction vectors below this norm are treated as rest when composing the
// velocity (the only continuous completion of the 0/0 case).
inline constexpr double kDirEps = 1e-12;

// Linear fundamental relation, clamped at zero above jam density. Rejects
// negative densities.
double fundamental_speed(double rho, const ModelParams& p);

// Static route-choice fields; unit vectors wherever defined.
Vec2 static_field_straight(Point2 x);
Vec2 static_field_zigzag(Point2 x, const ModelParams& p);
// Spirals counter-clockwise towards the centre; returns the zero vector
// within eps of the centre (destination reached).
Vec2 static_field_spiral(Point2 x, const ModelParams& p, double eps = kGeomEps);

// Speed from the fundamental relation times the normalized composition of
// the static direction and the density-gradient avoidance term.
Vec2 compose_velocity(Vec2 e_stat, Vec2 grad_rho, double rho, const ModelParams& p,
                      double dir_eps = kDirEps);

enum class FieldKind { Straight, Zigzag, Spiral, Custom };

// A static route-choice field bound to its parameters. Pure; unrestricted
// concurrent use.
class StaticField {
  public:
    using CustomFn = std::function<Vec2(Point2)>;

    static StaticField straight();
    static StaticField zigzag(const ModelParams& p);
    static StaticField spiral(const ModelParams& p);
    static StaticField custom(CustomFn fn);

    Vec2 operator()(Point2 x) const;
    FieldKind kind() const { return kind_; }

  private:
    StaticField(FieldKind kind, ModelParams params, CustomFn fn)
        : kind_(kind), params_(params), custom_(std::move(fn)) {}

    FieldKind kind_;
    ModelParams params_;
    CustomFn custom_;
};

}  // namespace crowdlag
