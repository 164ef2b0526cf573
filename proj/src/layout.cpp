#include "areagraph/layout.hpp"

#include <limits>

namespace areagraph {

std::vector<Segment> flatten(const EdgeGeometry& g, int samples) {
    std::vector<Segment> out;
    const auto& p = g.points;
    if (p.size() < 2) return out;
    switch (g.style) {
        case EdgeStyle::Straight:
        case EdgeStyle::Orthogonal:
            for (std::size_t i = 0; i + 1 < p.size(); ++i)
                if (!(p[i] == p[i + 1])) out.push_back({p[i], p[i + 1]});
            break;
        case EdgeStyle::Quadratic: {
            Point prev = p[0];
            for (int k = 1; k <= samples; ++k) {
                Point q = quad_bezier_point(p[0], p[1], p[2], double(k) / samples);
                out.push_back({prev, q});
                prev = q;
            }
            break;
        }
        case EdgeStyle::CubicChain:
            for (std::size_t i = 0; i + 3 < p.size(); i += 3) {
                bool straight = p[i + 1] == p[i] && p[i + 2] == p[i + 3];
                if (straight) {
                    if (!(p[i] == p[i + 3])) out.push_back({p[i], p[i + 3]});
                    continue;
                }
                Point prev = p[i];
                for (int k = 1; k <= samples; ++k) {
                    Point q = cubic_bezier_point(p[i], p[i + 1], p[i + 2], p[i + 3],
                                                 double(k) / samples);
                    out.push_back({prev, q});
                    prev = q;
                }
            }
            break;
    }
    return out;
}

Rect geometry_bounds(const EdgeGeometry& g) {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (Point q : g.points) {
        x0 = std::min(x0, q.x);
        y0 = std::min(y0, q.y);
        x1 = std::max(x1, q.x);
        y1 = std::max(y1, q.y);
    }
    if (g.points.empty()) return {};
    return Rect::from_bounds(x0, y0, x1, y1);
}

}  // namespace areagraph
