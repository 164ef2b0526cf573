#include "areagraph/bezier_post.hpp"

#include <cmath>

namespace areagraph::bezier {

namespace {

double rect_gap(Point q, const Rect& r) { return distance(q, clamp_to_rect(q, r)); }

}  // namespace

CurveProximity curve_rect_closest(Point p0, Point control, Point p1, const Rect& r,
                                  int samples) {
    samples = std::max(samples, 2);
    CurveProximity best;
    best.distance = INFINITY;
    double best_core = INFINITY;
    // Inside the rectangle every sample has gap 0; prefer the one nearest the centre.
    auto consider = [&](double t) {
        Point q = quad_bezier_point(p0, control, p1, t);
        double d = rect_gap(q, r);
        double core = d == 0.0 ? distance(q, r.center) : INFINITY;
        if (d < best.distance || (d == 0.0 && core < best_core)) {
            best = {q, clamp_to_rect(q, r), t, d};
            best_core = core;
        }
    };
    for (int k = 0; k <= samples; ++k) consider(double(k) / samples);
    // Refine once between the neighbouring samples.
    double h = 0.5 / samples;
    double t = best.t;
    if (t - h >= 0) consider(t - h);
    if (t + h <= 1) consider(t + h);
    return best;
}

Vec2 curve_repel(Point p0, Point control, Point p1, const Rect& v, const BezierParams& params) {
    CurveProximity cp = curve_rect_closest(p0, control, p1, v, params.samples);
    if (cp.distance > params.proximity_factor * std::max(v.width, v.height)) return {0, 0};
    Vec2 dir = unit(cp.on_rect, cp.on_curve);
    if (dir == Vec2{0, 0}) dir = unit(v.center, cp.on_curve);
    if (dir == Vec2{0, 0}) {
        double t = cp.t;
        Vec2 tangent = (control - p0) * (2 * (1 - t)) + (p1 - control) * (2 * t);
        Vec2 along = unit({0, 0}, tangent);
        if (along == Vec2{0, 0}) along = unit(p0, p1);
        dir = {-along.y, along.x};
    }
    double d = std::max(cp.distance, params.distance_floor);
    return dir * ((v.width * v.width + v.height * v.height) / d);
}

Vec2 curve_attract(Point p0, Point control, Point p1, const Rect& v, const BezierParams& params) {
    CurveProximity cp = curve_rect_closest(p0, control, p1, v, params.samples);
    if (cp.distance == 0.0) return {0, 0};
    return unit(cp.on_curve, cp.on_rect) *
           (cp.distance * cp.distance / std::hypot(v.width, v.height));
}

namespace {

struct Scene {
    std::vector<std::string> ids;
    std::vector<Rect> rects;
};

Scene make_scene(const Layout& layout, const WeightedGraph& g) {
    Scene s;
    for (const auto& v : g.vertices()) {
        auto it = layout.positions.find(v.id);
        if (it == layout.positions.end()) continue;
        s.ids.push_back(v.id);
        s.rects.push_back({it->second, v.width, v.height});
    }
    return s;
}

std::size_t edge_inner_hits(const DrawnEdge& e, const Scene& s, double inner_fraction) {
    auto pieces = flatten(e.geometry, 32);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
        if (s.ids[i] == e.src || s.ids[i] == e.dst) continue;
        Rect inner = s.rects[i].scaled(inner_fraction);
        for (const auto& p : pieces)
            if (segment_meets_rect(p, inner)) {
                ++hits;
                break;
            }
    }
    return hits;
}

bool meets_any_rect(const DrawnEdge& e, const Scene& s) {
    Segment seg{e.geometry.points.front(), e.geometry.points.back()};
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
        if (s.ids[i] == e.src || s.ids[i] == e.dst) continue;
        if (segment_meets_rect(seg, s.rects[i])) return true;
    }
    return false;
}

Point relax_control(Point a, Point b, const DrawnEdge& e, const Scene& s,
                    const BezierParams& params) {
    Segment seg{a, b};
    std::vector<std::size_t> others, attract;
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
        if (s.ids[i] == e.src || s.ids[i] == e.dst) continue;
        others.push_back(i);
        if (segment_rect_distance(seg, s.rects[i]) < params.attract_factor * params.l_unit)
            attract.push_back(i);
    }
    Point c = (a + b) * 0.5;
    double scale = 1.0;
    for (int it = 0; it < params.max_iterations; ++it) {
        Vec2 f{0, 0};
        double x0 = std::min({a.x, b.x, c.x}), x1 = std::max({a.x, b.x, c.x});
        double y0 = std::min({a.y, b.y, c.y}), y1 = std::max({a.y, b.y, c.y});
        for (std::size_t i : others) {
            const Rect& r = s.rects[i];
            double reach = params.proximity_factor * std::max(r.width, r.height);
            if (r.right() + reach < x0 || r.left() - reach > x1 || r.bottom() + reach < y0 ||
                r.top() - reach > y1)
                continue;
            f += curve_repel(a, c, b, r, params);
        }
        for (std::size_t i : attract) f += curve_attract(a, c, b, s.rects[i], params);
        Vec2 step = f * (params.step_weight * scale);
        double len = norm(step);
        if (len > params.max_step) step *= params.max_step / len;
        Point nc = c + step;
        if (params.bounds) nc = clamp_to_rect(nc, *params.bounds);
        double moved = distance(nc, c);
        c = nc;
        scale *= params.cooling;
        if (moved < params.eps_move) break;
    }
    return c;
}

}  // namespace

std::size_t count_inner_hits(const Layout& layout, const WeightedGraph& g, double inner_fraction) {
    Scene s = make_scene(layout, g);
    std::size_t total = 0;
    for (const auto& e : layout.edges) total += edge_inner_hits(e, s, inner_fraction);
    return total;
}

Layout refine_curves(const Layout& layout, const WeightedGraph& g, const BezierParams& params,
                     RefineReport* report) {
    Scene s = make_scene(layout, g);
    Layout out = layout;
    RefineReport rep;
    for (auto& e : out.edges) {
        std::size_t before = edge_inner_hits(e, s, params.inner_fraction);
        rep.inner_hits_before += before;
        if (e.geometry.style != EdgeStyle::Straight || !meets_any_rect(e, s)) {
            rep.inner_hits_after += before;
            continue;
        }
        Point a = e.geometry.points.front(), b = e.geometry.points.back();
        Point c = relax_control(a, b, e, s, params);
        DrawnEdge curved = e;
        curved.geometry = {EdgeStyle::Quadratic, {a, c, b}};
        std::size_t after = edge_inner_hits(curved, s, params.inner_fraction);
        std::string name = e.src + "-" + e.dst;
        if (after > before) {
            rep.reverted.push_back(name);
            rep.inner_hits_after += before;
            if (before > 0) rep.uncleared.push_back(name);
            continue;
        }
        e = std::move(curved);
        rep.curved.push_back(name);
        rep.inner_hits_after += after;
        if (after > 0) rep.uncleared.push_back(name);
    }
    if (report) *report = std::move(rep);
    return out;
}

}  // namespace areagraph::bezier
