#pragma once

#include <map>
#include <string>
#include <vector>

#include "areagraph/geometry.hpp"

namespace areagraph {

enum class EdgeStyle { Straight, Quadratic, Orthogonal, CubicChain };

// Geometry of one drawn edge, from src to dst (from dst to src when the
// edge is drawn reversed).
//   Straight:   {a, b}
//   Quadratic:  {a, control, b}
//   Orthogonal: polyline with axis-parallel pieces
//   CubicChain: {p0, c1, c2, p1, c1', c2', p2, ...}, 3k+1 points
struct EdgeGeometry {
    EdgeStyle style = EdgeStyle::Straight;
    std::vector<Point> points;
};

struct DrawnEdge {
    std::string src;
    std::string dst;
    double weight = 1.0;
    EdgeGeometry geometry;
    bool reversed = false;       // drawn against the direction of the input edge
    double stroke_width = 0.0;   // cm; 0 means renderer default
};

struct Layout {
    std::map<std::string, Point> positions;  // vertex centres
    std::vector<DrawnEdge> edges;
};

// Piecewise-linear approximation; curves are sampled with `samples` pieces.
std::vector<Segment> flatten(const EdgeGeometry& g, int samples = 16);

// Axis-parallel bounding box of the control polygon.
Rect geometry_bounds(const EdgeGeometry& g);

}  // namespace areagraph
