#include <doctest.h>

#include <cmath>
#include <numbers>

#include "areagraph/force_layout.hpp"
#include "support.hpp"

using namespace areagraph;
using namespace areagraph::force;

namespace {

WeightedGraph small_boxes(std::size_t n, double side, double weight = 1) {
    WeightedGraph g(false);
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(testgen::box(testgen::vid(i), weight, side, side));
    return g;
}

Vec2 rotate(Vec2 v, double a) {
    return {v.x * std::cos(a) - v.y * std::sin(a), v.x * std::sin(a) + v.y * std::cos(a)};
}

}  // namespace

TEST_SUITE("force") {

TEST_CASE("repulsion and attraction magnitudes") {
    Vec2 r = force_repulsive({0, 0}, {3, 0}, 2);
    CHECK(r.x == doctest::Approx(4.0 / 3.0));
    CHECK(r.y == doctest::Approx(0));
    Vec2 a = force_attractive({0, 0}, {3, 0}, 2);
    CHECK(a.x == doctest::Approx(-4.5));
    CHECK(a.y == doctest::Approx(0));
    CHECK(force_repulsive({1, 1}, {1, 1}, 2) == Vec2{0, 0});
}

TEST_CASE("edge repulsion decays to zero at l") {
    Rect v{{0, 0}, 6, 6};
    auto at = [&](double d) { return force_edge_repulsion(v, {{-5, -d}, {5, -d}}, 2.0); };
    CHECK(norm(at(0)) == doctest::Approx(4));
    CHECK(at(1).y == doctest::Approx(1));
    CHECK(at(1).x == doctest::Approx(0));
    CHECK(norm(force_edge_repulsion(v, {{-5, -1.4}, {5, -1.4}}, 1.4)) == doctest::Approx(0));
    // The tie side picks the perpendicular.
    Vec2 up = force_edge_repulsion(v, {{-5, 0}, {5, 0}}, 2.0, 0.5, 1);
    Vec2 down = force_edge_repulsion(v, {{-5, 0}, {5, 0}}, 2.0, 0.5, -1);
    CHECK(up.y == doctest::Approx(-down.y));
    CHECK(std::abs(up.y) == doctest::Approx(4));
    // Edges outside the inner region exert nothing.
    CHECK(norm(force_edge_repulsion(v, {{-5, -2.5}, {5, -2.5}}, 2.0)) == 0);
}

TEST_CASE("gravity points at the centre") {
    Vec2 g = force_gravity({1, 1}, {0, 0});
    CHECK(norm(g) == doctest::Approx(std::sqrt(2.0)));
    CHECK(g.x < 0);
}

TEST_CASE("virtual frame force") {
    Frame f{Rect::from_bounds(0, 0, 10, 10)};
    Vec2 near_left = force_frame_virtual(Rect{{2, 5}, 2, 2}, f, 2);
    CHECK(near_left.x == doctest::Approx(4));
    CHECK(near_left.y == doctest::Approx(0));
    Vec2 mid = force_frame_virtual(Rect{{5, 5}, 0, 0}, f, 2);
    CHECK(norm(mid) == doctest::Approx(4.0 / 5.0));
    Vec2 touching = force_frame_virtual(Rect{{1, 5}, 2, 2}, f, 2);
    CHECK(touching.x == doctest::Approx(4 / kFrameDistanceFloor));
}

TEST_CASE("pressure examples") {
    std::vector<Vec2> opposite{{10, 0}, {-10, 0}};
    CHECK(vertex_pressure(opposite).pressure == doctest::Approx(10));
    std::vector<Vec2> one{{3, 4}};
    CHECK(vertex_pressure(one).pressure == 0);
    std::vector<Vec2> skew{{10, 0}, {-6, -6}};
    CHECK(vertex_pressure(skew).pressure == doctest::Approx(6 * std::sqrt(2.0)));
    std::vector<Vec2> adjacent{{10, 0}, {0, 10}};
    CHECK(vertex_pressure(adjacent).pressure == 0);
}

TEST_CASE("octants") {
    CHECK(octant_of({1, 0}) == 0);
    CHECK(octant_of({1, 1.01}) == 1);
    CHECK(octant_of({-1, 0.01}) == 3);
    CHECK(octant_of({-1, -0.01}) == 4);
    CHECK(octant_of({0.01, -1}) == 6);
    CHECK(octant_of({1, -0.01}) == 7);
}

TEST_CASE("pressure is invariant under rotation by multiples of 45 degrees") {
    testgen::Rng rng(11);
    for (int round = 0; round < 50; ++round) {
        std::vector<Vec2> fs;
        int k = 1 + int(rng.below(6));
        for (int i = 0; i < k; ++i) {
            // Keep away from octant borders so rotation cannot move a vector across one.
            double a = (double(rng.below(8)) + rng.uniform(0.1, 0.9)) * std::numbers::pi / 4;
            double m = rng.uniform(0.5, 5);
            fs.push_back({m * std::cos(a), m * std::sin(a)});
        }
        double p = vertex_pressure(fs).pressure;
        for (int q = 1; q < 8; ++q) {
            std::vector<Vec2> rot;
            for (auto v : fs) rot.push_back(rotate(v, q * std::numbers::pi / 4));
            CHECK(vertex_pressure(rot).pressure == doctest::Approx(p));
        }
    }
}

TEST_CASE("forces within one half-plane give no pressure") {
    testgen::Rng rng(12);
    for (int round = 0; round < 50; ++round) {
        std::vector<Vec2> fs;
        for (int i = 0; i < 5; ++i) {
            double a = rng.uniform(0.01, 0.99) * std::numbers::pi / 2;
            fs.push_back({std::cos(a), std::sin(a)});
        }
        CHECK(vertex_pressure(fs).pressure == 0);
    }
}

TEST_CASE("pairwise forces are antisymmetric") {
    testgen::Rng rng(13);
    for (int round = 0; round < 50; ++round) {
        Point u{rng.uniform(-5, 5), rng.uniform(-5, 5)}, v{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Vec2 a = force_repulsive(u, v, 2), b = force_repulsive(v, u, 2);
        CHECK(a.x == doctest::Approx(-b.x));
        CHECK(a.y == doctest::Approx(-b.y));
        a = force_attractive(u, v, 2);
        b = force_attractive(v, u, 2);
        CHECK(a.x == doctest::Approx(-b.x));
        CHECK(a.y == doctest::Approx(-b.y));
    }
}

TEST_CASE("stress values") {
    CHECK(vertex_stress(12, 2, 1, 0.5) == doctest::Approx(4));
    std::vector<double> crossing{3, 5};
    CHECK(edge_stress(2, crossing) == doctest::Approx(8));
    CHECK(edge_stress(2, std::vector<double>{}) == 0);
}

TEST_CASE("stress argmax does not change when all weights scale") {
    testgen::Rng rng(14);
    for (int round = 0; round < 30; ++round) {
        std::vector<double> p, w;
        std::vector<std::size_t> deg;
        for (int i = 0; i < 8; ++i) {
            p.push_back(rng.uniform(0, 10));
            w.push_back(rng.integer(1, 20));
            deg.push_back(rng.below(5));
        }
        auto argmax = [&](double scale) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < p.size(); ++i)
                if (vertex_stress(p[i], w[i] * scale, deg[i], 0.5) >
                    vertex_stress(p[best], w[best] * scale, deg[best], 0.5))
                    best = i;
            return best;
        };
        CHECK(argmax(1) == argmax(7.5));
    }
}

TEST_CASE("frame shrinking") {
    Frame start{{{25, 20}, 50, 40}};
    DrawingArea target{25, 20};
    Frame one = shrink_frame(start, target, 1, 25);
    CHECK(one.bounds.width == doctest::Approx(49));
    CHECK(one.bounds.height == doctest::Approx(39.2));
    CHECK(one.bounds.center == Point{25, 20});
    Frame last = shrink_frame(start, target, 25, 25);
    CHECK(last.bounds.width == 25);
    CHECK(last.bounds.height == 20);
}

TEST_CASE("push_inside moves minimally") {
    Frame f{Rect::from_bounds(0, 0, 10, 10)};
    CHECK(push_inside({-3, 5}, 2, 2, f) == Point{1, 5});
    CHECK(push_inside({5, 5}, 2, 2, f) == Point{5, 5});
    CHECK(push_inside({12, 12}, 4, 2, f) == Point{8, 9});
}

TEST_CASE("preprocessing keep count") {
    WeightedGraph g(false);
    g.add_vertex(testgen::box("a", 1, 1.5, 0.5));
    g.add_vertex(testgen::box("b", 1, 3.0, 0.9));
    ForceParams p;
    DrawingArea area{29.7, 21};
    CHECK(preprocess_keep_count(g, area, p) == doctest::Approx(113.19419237749545));

    WeightedGraph many(false);
    for (std::size_t i = 0; i < 200; ++i) many.add_vertex(testgen::box(testgen::vid(i), 1, 1.5, 0.5));
    CHECK(preprocess_by_weight(many, area, p).vertex_count() == 114);

    auto few = small_boxes(10, 0.5);
    CHECK(preprocess_by_weight(few, area, p) == few);
}

TEST_CASE("preprocessing keeps the heaviest, ties by id") {
    WeightedGraph g(false);
    for (int i = 0; i < 6; ++i) g.add_vertex(testgen::box(std::string(1, char('f' - i)), i < 2 ? 5 : 1, 1, 1));
    ForceParams p;
    // Room for about 3.3 boxes: keep 4.
    DrawingArea area{2.4 * 2.4 * 3.3 / 2.4, 2.4};
    auto kept = preprocess_by_weight(g, area, p);
    REQUIRE(kept.vertex_count() == 4);
    CHECK(kept.has_vertex("f"));
    CHECK(kept.has_vertex("e"));
    CHECK(kept.has_vertex("a"));
    CHECK(kept.has_vertex("b"));
}

TEST_CASE("pair forces cancel exactly at distance l") {
    for (double l : {1.0, 2.0, 3.5}) {
        Vec2 f = force_repulsive({0, 0}, {l, 0}, l) + force_attractive({0, 0}, {l, 0}, l);
        CHECK(f.x == doctest::Approx(0));
    }
}

TEST_CASE("an adjacent pair converges to distance l with a tight tolerance") {
    WeightedGraph g = small_boxes(2, 0.2);
    g.add_edge({"n0", "n1", 1});
    ForceParams p;
    p.cooling = 0.999999;
    p.eps_move = 1e-7;
    p.max_iterations = 20000;
    for (double start : {1.0, 3.0, 5.0}) {
        auto eq = compute_equilibrium(g, {{0, 0}, {start, 0}}, std::nullopt, p, {false, true}, {0, 0});
        CHECK(distance(eq.positions[0], eq.positions[1]) == doctest::Approx(2).epsilon(5e-4));
    }
}

// Known failure: with the default weights the loop stops once a step drops
// below eps_move, about eps_move / (3 alpha) away from l, and the cooling
// freezes motion at roughly e^-3 of the starting gap.
TEST_CASE("an adjacent pair settles within eps_move of l under defaults" * doctest::should_fail()) {
    WeightedGraph g = small_boxes(2, 0.2);
    g.add_edge({"n0", "n1", 1});
    ForceParams p;
    auto eq = compute_equilibrium(g, {{0, 0}, {3, 0}}, std::nullopt, p, {false, true}, {1.5, 0});
    double d = distance(eq.positions[0], eq.positions[1]);
    CHECK(std::abs(d - p.l_unit) <= p.eps_move);
}

TEST_CASE("equilibrium inside a frame keeps vertices in it") {
    WeightedGraph g = small_boxes(3, 0.4);
    g.add_edge({"n0", "n1", 1});
    g.add_edge({"n1", "n2", 1});
    ForceParams p;
    Frame f{Rect::from_bounds(0, 0, 3, 1)};
    auto eq = compute_equilibrium(g, {{0.5, 0.5}, {1.5, 0.5}, {2.5, 0.5}}, f, p, {true, true},
                                  {1.5, 0.5});
    for (auto pt : eq.positions) CHECK(f.bounds.contains(Rect{pt, 0.4, 0.4}));
}

TEST_CASE("guard and removal thresholds") {
    ForceParams p;
    auto make = [](double len) {
        WeightedGraph g(false);
        g.add_vertex(testgen::box("a", 5, 0.2, 0.2));
        g.add_vertex(testgen::box("b", 5, 0.2, 0.2));
        g.add_vertex(testgen::box("c", 1, 0.2, 0.2));
        g.add_edge({"a", "b", 1});
        return std::pair{g, std::vector<Point>{{0, 0}, {len, 0}, {0, 0.3}}};
    };
    auto [far_g, far_pos] = make(2.0);
    far_pos[2] = {1, 5};
    CHECK_FALSE(removal_guard(far_g, far_pos, p));
    CHECK_THROWS_AS(removal_step(far_g, far_pos, p, std::nullopt, {}), std::logic_error);

    auto [short_g, short_pos] = make(0.89 * p.l_unit);
    REQUIRE(removal_guard(short_g, short_pos, p));
    auto r = removal_step(short_g, short_pos, p, std::nullopt, {});
    CHECK(r.kind == RemovalKind::Vertex);
    CHECK(r.graph.vertex_count() == 2);
    CHECK(r.positions.size() == 2);

    auto [long_g, long_pos] = make(1.2 * p.l_unit);
    REQUIRE(removal_guard(long_g, long_pos, p));
    auto e = removal_step(long_g, long_pos, p, std::nullopt, {});
    CHECK(e.kind == RemovalKind::Edge);
    CHECK(e.graph.vertex_count() == 3);
    CHECK(e.graph.edge_count() == 0);
}

TEST_CASE("short edge triggers the guard") {
    ForceParams p;
    WeightedGraph g = small_boxes(2, 1.0);
    g.add_edge({"n0", "n1", 1});
    CHECK(removal_guard(g, {{0, 0}, {1.1, 0}}, p));
    CHECK_FALSE(removal_guard(g, {{0, 0}, {1.5, 0}}, p));
}

TEST_CASE("parameter validation") {
    ForceParams p;
    CHECK_NOTHROW(p.validate());
    p.l_adj = 0.5;
    p.l_nadj = 0.4;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.l_unit = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.cooling = 1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("a graph that fits is drawn whole") {
    auto g = parse_graph(
        "graph undirected\nv a 1 0.5 0.5\nv b 1 0.5 0.5\nv c 1 0.5 0.5\ne a b 1\ne b c 1\n");
    auto r = run_force_pipeline(g, {29.7, 21}, {});
    CHECK(r.subgraph.vertex_count() == 3);
    CHECK(r.metrics.vertex_fraction() == 1.0);
    CHECK(check_final_layout(r.subgraph, r.layout, {29.7, 21}, {}) == "");
}

TEST_CASE("output never beats a packing bound") {
    // Eight unit squares; at most four fit in 2.5 x 2.5 with the spacing.
    auto g = small_boxes(8, 1.0);
    DrawingArea area{2.5, 2.5};
    ForceParams p;
    p.preprocess = false;
    try {
        auto r = run_force_pipeline(g, area, p);
        CHECK(r.subgraph.vertex_count() <= 4);
        CHECK(check_final_layout(r.subgraph, r.layout, area, p) == "");
    } catch (const EmptyDrawingError&) {
        CHECK(true);
    }
}

TEST_CASE("pipeline is deterministic and respects the final guarantees") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        testgen::Rng rng(seed);
        auto g = testgen::random_graph(rng, 25, 0.1, false);
        DrawingArea area{14, 10};
        ForceParams p;
        p.seed = seed;
        auto a = run_force_pipeline(g, area, p);
        auto b = run_force_pipeline(g, area, p);
        CHECK(a.subgraph == b.subgraph);
        CHECK(a.layout.positions == b.layout.positions);
        CHECK(check_final_layout(a.subgraph, a.layout, area, p) == "");
    }
}

}
