#pragma once

#include <optional>
#include <string>
#include <vector>

#include "areagraph/geometry.hpp"
#include "areagraph/graph.hpp"
#include "areagraph/layout.hpp"

namespace areagraph::bezier {

struct BezierParams {
    double l_unit = 2.0;
    // Vertices closer than attract_factor * l_unit to the straight edge attract
    // the control point.
    double attract_factor = 0.1;
    // Repulsion acts within proximity_factor * max(w, h) of the curve.
    double proximity_factor = 2.0;
    int samples = 64;
    int max_iterations = 200;
    double cooling = 0.99;
    double eps_move = 1e-3;
    double step_weight = 0.05;
    double max_step = 0.5;  // cm per iteration
    double inner_fraction = 0.5;
    double distance_floor = 1e-3;
    // Control points are clamped here, which keeps every curve inside.
    std::optional<Rect> bounds;
};

struct CurveProximity {
    Point on_curve;  // p_e'
    Point on_rect;   // p_v'
    double t = 0.0;
    double distance = 0.0;
};

// Closest curve/rectangle pair via uniform sampling plus one local refinement.
CurveProximity curve_rect_closest(Point p0, Point control, Point p1, const Rect& r,
                                  int samples = 64);

// Force on the control point pushing the curve away from v:
// (w^2 + h^2) / d along p_v' -> p_e'. Zero beyond the proximity radius.
Vec2 curve_repel(Point p0, Point control, Point p1, const Rect& v,
                 const BezierParams& params = {});
// Force pulling the curve towards v: d^2 / sqrt(w^2 + h^2) along p_e' -> p_v'.
Vec2 curve_attract(Point p0, Point control, Point p1, const Rect& v,
                   const BezierParams& params = {});

// Number of (edge, non-incident vertex) pairs where the edge geometry meets
// the vertex's inner region.
std::size_t count_inner_hits(const Layout& layout, const WeightedGraph& g,
                             double inner_fraction = 0.5);

struct RefineReport {
    std::vector<std::string> curved;     // "src-dst"
    std::vector<std::string> uncleared;  // still meeting an inner region
    std::vector<std::string> reverted;   // made things worse, left straight
    std::size_t inner_hits_before = 0;
    std::size_t inner_hits_after = 0;
};

// Turns straight edges that pass through a non-incident vertex rectangle into
// quadratic curves whose single control point is moved by the forces above.
Layout refine_curves(const Layout& layout, const WeightedGraph& g,
                     const BezierParams& params = {}, RefineReport* report = nullptr);

}  // namespace areagraph::bezier
