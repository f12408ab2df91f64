#pragma once

#include <cmath>
#include <vector>

namespace crowdlag {

// Geometric tolerance in metres, used for on-edge classification during
// clipping and (squared) as the degenerate-area threshold.
inline constexpr double kGeomEps = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

using Point2 = Vec2;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Vec2 a, Vec2 b) { return !(a == b); }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return v >= lo && v <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Counter-clockwise at construction time; vertex motion may later flip the
// orientation. Flips are detected (signed_area < 0), not prevented.
struct Triangle {
    Point2 v1, v2, v3;
};

// Counter-clockwise vertex ring; either empty or >= 3 vertices.
struct ConvexPolygon {
    std::vector<Point2> vertices;

    bool empty() const { return vertices.empty(); }
    int size() const { return static_cast<int>(vertices.size()); }
};

// All functions below are pure; safe to call concurrently.

double triangle_area(const Triangle& t);
double signed_area(const Triangle& t);
Point2 centroid(const Triangle& t);

// Nonnegative shoelace area; agrees with triangle_area on 3-gons.
double polygon_area(const ConvexPolygon& p);

// Intersection of two triangles via half-plane clipping. Intersections with
// area below eps^2 come back empty.
ConvexPolygon clip_triangle_triangle(const Triangle& subject, const Triangle& clip,
                                     double eps = kGeomEps);

// Area of the intersection without materialising the polygon.
double triangle_intersection_area(const Triangle& subject, const Triangle& clip,
                                  double eps = kGeomEps);

// Inclusive within eps of the boundary; orientation-agnostic.
bool point_in_triangle(Point2 p, const Triangle& t, double eps = kGeomEps);

}  // namespace crowdlag
