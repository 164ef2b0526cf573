#include "areagraph/geometry.hpp"

namespace areagraph {

Point project_onto_segment(Point p, const Segment& s) {
    Vec2 d = s.b - s.a;
    double len2 = dot(d, d);
    if (len2 == 0.0) return s.a;
    double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    return s.a + d * t;
}

double point_segment_distance(Point p, const Segment& s) {
    return distance(p, project_onto_segment(p, s));
}

namespace {

int orientation(Point a, Point b, Point c) {
    double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
}

bool on_segment(Point p, const Segment& s) {
    return p.x >= std::min(s.a.x, s.b.x) && p.x <= std::max(s.a.x, s.b.x) &&
           p.y >= std::min(s.a.y, s.b.y) && p.y <= std::max(s.a.y, s.b.y);
}

}  // namespace

bool segments_cross_properly(const Segment& s, const Segment& t) {
    int o1 = orientation(s.a, s.b, t.a);
    int o2 = orientation(s.a, s.b, t.b);
    int o3 = orientation(t.a, t.b, s.a);
    int o4 = orientation(t.a, t.b, s.b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_intersect(const Segment& s, const Segment& t) {
    int o1 = orientation(s.a, s.b, t.a);
    int o2 = orientation(s.a, s.b, t.b);
    int o3 = orientation(t.a, t.b, s.a);
    int o4 = orientation(t.a, t.b, s.b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_segment(t.a, s)) return true;
    if (o2 == 0 && on_segment(t.b, s)) return true;
    if (o3 == 0 && on_segment(s.a, t)) return true;
    if (o4 == 0 && on_segment(s.b, t)) return true;
    return false;
}

bool segment_meets_rect(const Segment& s, const Rect& r) {
    // Liang-Barsky clipping against the closed rectangle.
    double t0 = 0.0, t1 = 1.0;
    Vec2 d = s.b - s.a;
    const double p[4] = {-d.x, d.x, -d.y, d.y};
    const double q[4] = {s.a.x - r.left(), r.right() - s.a.x, s.a.y - r.top(),
                         r.bottom() - s.a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return false;
            continue;
        }
        double t = q[i] / p[i];
        if (p[i] < 0.0) {
            if (t > t1) return false;
            t0 = std::max(t0, t);
        } else {
            if (t < t0) return false;
            t1 = std::min(t1, t);
        }
    }
    return t0 <= t1;
}

double segment_rect_distance(const Segment& s, const Rect& r) {
    if (segment_meets_rect(s, r)) return 0.0;
    // Disjoint: the minimum is attained at a segment endpoint or a rectangle corner.
    double best = std::min(distance(s.a, clamp_to_rect(s.a, r)),
                           distance(s.b, clamp_to_rect(s.b, r)));
    const Point corners[4] = {{r.left(), r.top()},
                              {r.right(), r.top()},
                              {r.right(), r.bottom()},
                              {r.left(), r.bottom()}};
    for (Point c : corners) best = std::min(best, point_segment_distance(c, s));
    return best;
}

RectHitResult segment_rect_intersection(const Segment& s, const Rect& r,
                                        double inner_fraction) {
    RectHitResult out;
    out.projection = project_onto_segment(r.center, s);
    if (segment_meets_rect(s, r.scaled(inner_fraction)))
        out.kind = RectHit::Inner;
    else if (segment_meets_rect(s, r))
        out.kind = RectHit::Outer;
    return out;
}

Point quad_bezier_point(Point p0, Point c, Point p1, double t) {
    double u = 1.0 - t;
    return p0 * (u * u) + c * (2 * u * t) + p1 * (t * t);
}

Point cubic_bezier_point(Point p0, Point c1, Point c2, Point p1, double t) {
    double u = 1.0 - t;
    return p0 * (u * u * u) + c1 * (3 * u * u * t) + c2 * (3 * u * t * t) + p1 * (t * t * t);
}

}  // namespace areagraph
