#include <doctest.h>

#include <cmath>

#include "areagraph/bezier_post.hpp"
#include "support.hpp"

using namespace areagraph;
using namespace areagraph::bezier;

namespace {

const Point P0{0, 0}, C{5, 0}, P1{10, 0};

struct Scene {
    WeightedGraph g{false};
    Layout layout;

    void vertex(const std::string& id, Point at, double w, double h) {
        g.add_vertex(testgen::box(id, 1, w, h));
        layout.positions[id] = at;
    }
    void edge(const std::string& a, const std::string& b) {
        g.add_edge({a, b, 1});
        DrawnEdge d;
        d.src = a;
        d.dst = b;
        d.geometry = {EdgeStyle::Straight, {layout.positions[a], layout.positions[b]}};
        layout.edges.push_back(d);
    }
};

Scene through_middle() {
    Scene s;
    s.vertex("a", {0, 0}, 0.5, 0.5);
    s.vertex("b", {10, 0}, 0.5, 0.5);
    s.vertex("c", {5, 0}, 1, 1);
    s.edge("a", "b");
    return s;
}

}  // namespace

TEST_SUITE("bezier") {

TEST_CASE("repulsion magnitude and direction") {
    Vec2 f = curve_repel(P0, C, P1, Rect{{5, 1.5}, 2, 1});
    CHECK(norm(f) == doctest::Approx(5).epsilon(1e-3));
    CHECK(f.y < 0);
    Vec2 g = curve_repel(P0, C, P1, Rect{{5, 2.5}, 2, 1});
    CHECK(norm(g) == doctest::Approx(norm(f) / 2).epsilon(1e-3));
    CHECK(norm(curve_repel(P0, C, P1, Rect{{5, 5.5}, 2, 1})) == 0);
}

TEST_CASE("attraction magnitude and direction") {
    Vec2 f = curve_attract(P0, C, P1, Rect{{5, 1.5}, 2, 1});
    CHECK(norm(f) == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-3));
    CHECK(f.y > 0);
    CHECK(norm(curve_attract(P0, C, P1, Rect{{5, 0.5}, 2, 1})) == doctest::Approx(0));
    Vec2 big = curve_attract(P0, C, P1, Rect{{5, 2}, 4, 2});
    CHECK(norm(big) < norm(f));
}

TEST_CASE("closest pair on a straight curve") {
    auto cp = curve_rect_closest(P0, C, P1, Rect{{3, 2}, 2, 2});
    CHECK(cp.distance == doctest::Approx(1).epsilon(1e-3));
    CHECK(cp.on_rect.y == doctest::Approx(1));
    CHECK(cp.on_curve.y == doctest::Approx(0));
}

TEST_CASE("edges that miss every vertex stay straight") {
    Scene s;
    s.vertex("a", {0, 0}, 0.5, 0.5);
    s.vertex("b", {10, 0}, 0.5, 0.5);
    s.vertex("c", {5, 3}, 1, 1);
    s.edge("a", "b");
    RefineReport rep;
    auto out = refine_curves(s.layout, s.g, {}, &rep);
    REQUIRE(out.edges.size() == 1);
    CHECK(out.edges[0].geometry.style == EdgeStyle::Straight);
    CHECK(out.edges[0].geometry.points == s.layout.edges[0].geometry.points);
    CHECK(rep.curved.empty());
}

TEST_CASE("a vertex on the midpoint is cleared sideways") {
    auto s = through_middle();
    CHECK(count_inner_hits(s.layout, s.g) == 1);
    RefineReport rep;
    auto out = refine_curves(s.layout, s.g, {}, &rep);
    REQUIRE(out.edges.size() == 1);
    const auto& geo = out.edges[0].geometry;
    REQUIRE(geo.style == EdgeStyle::Quadratic);
    CHECK(geo.points.front() == Point{0, 0});
    CHECK(geo.points.back() == Point{10, 0});
    CHECK(geo.points[1].x == doctest::Approx(5).epsilon(1e-4));
    CHECK(std::abs(geo.points[1].y) > 0.5);
    Rect c{{5, 0}, 1, 1};
    for (int i = 0; i <= 200; ++i) {
        Point p = quad_bezier_point(geo.points[0], geo.points[1], geo.points[2], i / 200.0);
        CHECK_FALSE(c.contains(p));
    }
    CHECK(count_inner_hits(out, s.g) == 0);
    CHECK(rep.uncleared.empty());
}

TEST_CASE("symmetric offenders keep the control point on the bisector") {
    Scene s;
    s.vertex("a", {0, 0}, 0.5, 0.5);
    s.vertex("b", {10, 0}, 0.5, 0.5);
    s.vertex("c", {4, 0}, 1, 1);
    s.vertex("d", {6, 0}, 1, 1);
    s.edge("a", "b");
    auto out = refine_curves(s.layout, s.g);
    REQUIRE(out.edges[0].geometry.points.size() == 3);
    CHECK(out.edges[0].geometry.points[1].x == doctest::Approx(5).epsilon(1e-6));
}

TEST_CASE("refinement never adds inner hits and keeps endpoints") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        testgen::Rng rng(seed);
        auto g = testgen::random_graph(rng, 14, 0.2, false);
        auto l = testgen::random_layout(rng, g, 12, 9);
        BezierParams p;
        p.bounds = Rect::from_bounds(0, 0, 12, 9);
        auto out = refine_curves(l, g, p);
        CHECK(count_inner_hits(out, g) <= count_inner_hits(l, g));
        REQUIRE(out.edges.size() == l.edges.size());
        for (std::size_t i = 0; i < l.edges.size(); ++i) {
            CHECK(out.edges[i].geometry.points.front() == l.edges[i].geometry.points.front());
            CHECK(out.edges[i].geometry.points.back() == l.edges[i].geometry.points.back());
            if (out.edges[i].geometry.style == EdgeStyle::Straight)
                CHECK(out.edges[i].geometry.points == l.edges[i].geometry.points);
            for (auto pt : out.edges[i].geometry.points) CHECK(p.bounds->contains(pt));
        }
    }
}

}
