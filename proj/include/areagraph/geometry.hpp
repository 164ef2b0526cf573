#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

namespace areagraph {

// All lengths are in centimetres.
struct Point {
    double x = 0.0;
    double y = 0.0;

    Point& operator+=(Point o) { x += o.x; y += o.y; return *this; }
    Point& operator-=(Point o) { x -= o.x; y -= o.y; return *this; }
    Point& operator*=(double s) { x *= s; y *= s; return *this; }
    friend Point operator+(Point a, Point b) { return a += b; }
    friend Point operator-(Point a, Point b) { return a -= b; }
    friend Point operator*(Point a, double s) { return a *= s; }
    friend Point operator*(double s, Point a) { return a *= s; }
    friend Point operator-(Point a) { return {-a.x, -a.y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

using Vec2 = Point;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

// Unit vector from `from` towards `to`; zero vector when the points coincide.
inline Vec2 unit(Point from, Point to) {
    Vec2 d = to - from;
    double n = norm(d);
    if (n == 0.0) return {0.0, 0.0};
    return d * (1.0 / n);
}

struct Segment {
    Point a;
    Point b;
};

// Axis-parallel rectangle given by centre and full extents.
struct Rect {
    Point center;
    double width = 0.0;
    double height = 0.0;

    double left() const { return center.x - width / 2; }
    double right() const { return center.x + width / 2; }
    double top() const { return center.y - height / 2; }
    double bottom() const { return center.y + height / 2; }

    static Rect from_bounds(double x0, double y0, double x1, double y1) {
        return {{(x0 + x1) / 2, (y0 + y1) / 2}, x1 - x0, y1 - y0};
    }

    Rect scaled(double f) const { return {center, width * f, height * f}; }

    bool contains(const Rect& r, double tol = 1e-9) const {
        return r.left() >= left() - tol && r.right() <= right() + tol &&
               r.top() >= top() - tol && r.bottom() <= bottom() + tol;
    }
    bool contains(Point p) const {
        return p.x >= left() && p.x <= right() && p.y >= top() && p.y <= bottom();
    }
};

// Target drawing area, W x H cm, anchored at the origin.
struct DrawingArea {
    double width = 29.7;
    double height = 21.0;

    Rect rect() const { return Rect::from_bounds(0, 0, width, height); }
};

// Closest point of the (filled) rectangle to p.
inline Point clamp_to_rect(Point p, const Rect& r) {
    return {std::clamp(p.x, r.left(), r.right()), std::clamp(p.y, r.top(), r.bottom())};
}

// Boundary-to-boundary distance; zero when the rectangles touch or overlap.
inline double rect_distance(const Rect& a, const Rect& b) {
    double dx = std::max({0.0, a.left() - b.right(), b.left() - a.right()});
    double dy = std::max({0.0, a.top() - b.bottom(), b.top() - a.bottom()});
    return std::hypot(dx, dy);
}

inline bool rects_overlap(const Rect& a, const Rect& b) {
    return a.left() < b.right() && b.left() < a.right() && a.top() < b.bottom() &&
           b.top() < a.bottom();
}

// Orthogonal projection of p onto the segment, clamped to the endpoints.
Point project_onto_segment(Point p, const Segment& s);

double point_segment_distance(Point p, const Segment& s);

// True when the segments cross at a single point interior to both
// (touching, shared endpoints and collinear overlap do not count).
bool segments_cross_properly(const Segment& s, const Segment& t);

// True when the segments share at least one point.
bool segments_intersect(const Segment& s, const Segment& t);

// Does the closed segment meet the closed rectangle?
bool segment_meets_rect(const Segment& s, const Rect& r);

double segment_rect_distance(const Segment& s, const Rect& r);

enum class RectHit { None, Outer, Inner };

struct RectHitResult {
    RectHit kind = RectHit::None;
    // Orthogonal projection of the rectangle centre onto the segment (or the
    // nearer endpoint when the foot falls outside the segment).
    Point projection;
};

// Classifies how a segment meets a rectangle: Inner if it meets the rectangle
// scaled about its centre by inner_fraction, Outer if it meets only the full
// rectangle, None otherwise.
RectHitResult segment_rect_intersection(const Segment& s, const Rect& r,
                                        double inner_fraction = 0.5);

Point quad_bezier_point(Point p0, Point c, Point p1, double t);
Point cubic_bezier_point(Point p0, Point c1, Point c2, Point p1, double t);

}  // namespace areagraph
