#include "crowdlag/geometry.hpp"

#include <algorithm>
#include <array>

namespace crowdlag {

double triangle_area(const Triangle& t) {
    return 0.5 * std::abs((t.v1.x - t.v3.x) * (t.v2.y - t.v1.y) -
                          (t.v1.x - t.v2.x) * (t.v3.y - t.v1.y));
}

double signed_area(const Triangle& t) {
    return 0.5 * cross(t.v2 - t.v1, t.v3 - t.v1);
}

Point2 centroid(const Triangle& t) {
    return {(t.v1.x + t.v2.x + t.v3.x) / 3.0, (t.v1.y + t.v2.y + t.v3.y) / 3.0};
}

double polygon_area(const ConvexPolygon& p) {
    const auto& v = p.vertices;
    const size_t n = v.size();
    if (n < 3) return 0.0;
    double twice = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(twice);
}

namespace {

// Fixed-capacity vertex ring for the clipping intermediates. Clipping a
// convex n-gon against one half-plane yields at most n+1 vertices, so a
// triangle stays within 6 after three passes.
struct Ring {
    std::array<Point2, 12> pts;
    int n = 0;

    void push(Point2 p) { pts[static_cast<size_t>(n++)] = p; }
};

Point2 edge_intersection(Point2 p1, Point2 p2, Point2 a, Point2 e) {
    const Vec2 r = p2 - p1;
    const double denom = cross(r, e);
    if (denom == 0.0) return 0.5 * (p1 + p2);
    // Clamped to the segment so near-parallel edges cannot emit far-away points.
    const double t = std::clamp(cross(a - p1, e) / denom, 0.0, 1.0);
    return p1 + t * r;
}

void clip_half_plane(const Ring& in, Ring& out, Point2 a, Point2 b, double eps) {
    out.n = 0;
    if (in.n == 0) return;
    const Vec2 e = b - a;
    const double tol = -eps * norm(e);  // cross value at signed distance -eps
    Point2 s = in.pts[static_cast<size_t>(in.n - 1)];
    double s_side = cross(e, s - a);
    for (int i = 0; i < in.n; ++i) {
        const Point2 p = in.pts[static_cast<size_t>(i)];
        const double p_side = cross(e, p - a);
        const bool p_in = p_side >= tol;
        const bool s_in = s_side >= tol;
        if (p_in) {
            if (!s_in) out.push(edge_intersection(s, p, a, e));
            out.push(p);
        } else if (s_in) {
            out.push(edge_intersection(s, p, a, e));
        }
        s = p;
        s_side = p_side;
    }
}

double ring_area(const Ring& r) {
    if (r.n < 3) return 0.0;
    double twice = 0.0;
    for (int i = 0; i < r.n; ++i) {
        const Point2& a = r.pts[static_cast<size_t>(i)];
        const Point2& b = r.pts[static_cast<size_t>((i + 1) % r.n)];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(twice);
}

Ring clip_kernel(const Triangle& subject, const Triangle& clip, double eps) {
    Triangle s = subject;
    Triangle c = clip;
    const double sa_s = signed_area(s);
    const double sa_c = signed_area(c);
    if (sa_s == 0.0 || sa_c == 0.0) return {};
    if (sa_s < 0.0) std::swap(s.v2, s.v3);
    if (sa_c < 0.0) std::swap(c.v2, c.v3);

    Ring a, b;
    a.push(s.v1);
    a.push(s.v2);
    a.push(s.v3);
    clip_half_plane(a, b, c.v1, c.v2, eps);
    clip_half_plane(b, a, c.v2, c.v3, eps);
    clip_half_plane(a, b, c.v3, c.v1, eps);
    return b;
}

}  // namespace

ConvexPolygon clip_triangle_triangle(const Triangle& subject, const Triangle& clip, double eps) {
    const Ring ring = clip_kernel(subject, clip, eps);
    if (ring_area(ring) < eps * eps) return {};

    ConvexPolygon out;
    out.vertices.reserve(static_cast<size_t>(ring.n));
    const double merge_sq = eps * eps;
    for (int i = 0; i < ring.n; ++i) {
        const Point2 p = ring.pts[static_cast<size_t>(i)];
        if (out.vertices.empty() || norm_sq(p - out.vertices.back()) > merge_sq) {
            out.vertices.push_back(p);
        }
    }
    if (out.vertices.size() >= 2 &&
        norm_sq(out.vertices.front() - out.vertices.back()) <= merge_sq) {
        out.vertices.pop_back();
    }
    if (out.vertices.size() < 3) return {};
    return out;
}

double triangle_intersection_area(const Triangle& subject, const Triangle& clip, double eps) {
    const double area = ring_area(clip_kernel(subject, clip, eps));
    return area < eps * eps ? 0.0 : area;
}

bool point_in_triangle(Point2 p, const Triangle& t, double eps) {
    const double sa = signed_area(t);
    if (sa == 0.0) return false;
    const double sign = sa > 0.0 ? 1.0 : -1.0;
    const Point2 v[3] = {t.v1, t.v2, t.v3};
    for (int i = 0; i < 3; ++i) {
        const Vec2 e = v[(i + 1) % 3] - v[i];
        if (sign * cross(e, p - v[i]) < -eps * norm(e)) return false;
    }
    return true;
}

}  // namespace crowdlag
