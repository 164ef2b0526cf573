#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "areagraph/geometry.hpp"
#include "areagraph/graph.hpp"
#include "areagraph/layout.hpp"

namespace testgen {

using namespace areagraph;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * (double(g_() >> 11) * 0x1.0p-53);
    }
    std::size_t below(std::size_t n) { return std::size_t(uniform() * double(n)); }
    bool coin(double p = 0.5) { return uniform() < p; }
    double integer(int lo, int hi) { return double(lo + int(below(std::size_t(hi - lo + 1)))); }

private:
    std::mt19937_64 g_;
};

inline std::string vid(std::size_t i) { return "n" + std::to_string(i); }

inline Vertex box(const std::string& id, double weight, double w, double h) {
    Vertex v;
    v.id = id;
    v.weight = weight;
    v.width = w;
    v.height = h;
    return v;
}

// Random graph without self-loops or parallel edges.
inline WeightedGraph random_graph(Rng& rng, std::size_t n, double edge_p, bool directed) {
    WeightedGraph g(directed);
    for (std::size_t i = 0; i < n; ++i)
        g.add_vertex(box(vid(i), rng.integer(1, 20), rng.uniform(0.5, 3.0), rng.uniform(0.3, 1.0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = directed ? 0 : i + 1; j < n; ++j)
            if (i != j && rng.coin(edge_p)) g.add_edge({vid(i), vid(j), rng.integer(1, 9)});
    return g;
}

// Edges only from lower to higher index.
inline WeightedGraph random_dag(Rng& rng, std::size_t n, double edge_p) {
    WeightedGraph g(true);
    for (std::size_t i = 0; i < n; ++i)
        g.add_vertex(box(vid(i), rng.integer(1, 20), rng.uniform(0.5, 3.0), rng.uniform(0.3, 1.0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.coin(edge_p)) g.add_edge({vid(i), vid(j), rng.integer(1, 9)});
    return g;
}

// Straight-line layout with random positions.
inline Layout random_layout(Rng& rng, const WeightedGraph& g, double w, double h) {
    Layout l;
    // Rectangles stay inside the w x h area.
    for (const auto& v : g.vertices())
        l.positions[v.id] = {rng.uniform(v.width / 2, w - v.width / 2),
                             rng.uniform(v.height / 2, h - v.height / 2)};
    for (const auto& e : g.edges()) {
        DrawnEdge d;
        d.src = e.src;
        d.dst = e.dst;
        d.weight = e.weight;
        d.geometry = {EdgeStyle::Straight, {l.positions[e.src], l.positions[e.dst]}};
        l.edges.push_back(d);
    }
    return l;
}

// Orientation-based proper crossing test, independent of the library.
inline int orient(Point a, Point b, Point c) {
    double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

inline bool proper_cross(Point a, Point b, Point c, Point d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace testgen
