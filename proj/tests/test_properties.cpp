#include <doctest.h>

#include <cmath>
#include <set>

#include "areagraph/bench.hpp"
#include "areagraph/bezier_post.hpp"
#include "areagraph/force_layout.hpp"
#include "areagraph/layered_layout.hpp"
#include "areagraph/metrics.hpp"
#include "areagraph/render.hpp"
#include "support.hpp"

using namespace areagraph;

namespace {

std::vector<WeightedGraph> corpus(bench::GraphKind kind, std::size_t count, std::size_t n,
                                  std::uint64_t seed = 1) {
    bench::CorpusSpec s;
    s.kind = kind;
    s.count = count;
    s.n = n;
    s.seed = seed;
    return bench::generate_corpus(s);
}

void check_fractions(const RunMetrics& m) {
    for (double f : {m.vertex_fraction(), m.vertex_weight_fraction(), m.edge_fraction(),
                     m.edge_weight_fraction()}) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
    CHECK(m.retained_vertices <= m.input_vertices);
    CHECK(m.retained_edges <= m.input_edges);
}

bool is_subgraph(const WeightedGraph& sub, const WeightedGraph& g) {
    for (const auto& v : sub.vertices())
        if (!g.has_vertex(v.id)) return false;
    for (const auto& e : sub.edges())
        if (!g.find_edge(e.src, e.dst)) return false;
    return true;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("generated graphs survive a text round trip") {
    for (auto kind : {bench::GraphKind::Collab, bench::GraphKind::Calc})
        for (const auto& g : corpus(kind, 4, 70, 11)) {
            auto back = parse_graph(serialize_graph(g));
            CHECK(back == g);
            CHECK(serialize_graph(back) == serialize_graph(g));
        }
}

TEST_CASE("force output keeps its guarantees on collab graphs") {
    force::ForceParams p;
    DrawingArea area{14, 10};
    for (const auto& g : corpus(bench::GraphKind::Collab, 4, 40, 3)) {
        force::ForceResult r;
        try {
            r = force::run_force_pipeline(g, area, p);
        } catch (const force::EmptyDrawingError& e) {
            check_fractions(e.metrics);
            continue;
        }
        CHECK(force::check_final_layout(r.subgraph, r.layout, area, p) == "");
        CHECK(is_subgraph(r.subgraph, g));
        check_fractions(r.metrics);
        auto m = compute_metrics(g, r.subgraph, r.layout, 0.0);
        CHECK(m.retained_vertex_weight == doctest::Approx(r.metrics.retained_vertex_weight));
        CHECK(m.crossings == r.metrics.crossings);
    }
}

TEST_CASE("curve refinement never adds inner hits on force output") {
    force::ForceParams p;
    DrawingArea area{14, 10};
    for (const auto& g : corpus(bench::GraphKind::Collab, 3, 40, 5)) {
        force::ForceResult r;
        try {
            r = force::run_force_pipeline(g, area, p);
        } catch (const force::EmptyDrawingError&) {
            continue;
        }
        bezier::BezierParams bp;
        bp.bounds = area.rect();
        bezier::RefineReport rep;
        auto refined = bezier::refine_curves(r.layout, r.subgraph, bp, &rep);
        CHECK(rep.inner_hits_after <= rep.inner_hits_before);
        CHECK(bezier::count_inner_hits(refined, r.subgraph) == rep.inner_hits_after);
        REQUIRE(refined.edges.size() == r.layout.edges.size());
        for (std::size_t i = 0; i < refined.edges.size(); ++i) {
            const auto& a = r.layout.edges[i].geometry.points;
            const auto& b = refined.edges[i].geometry.points;
            CHECK(b.front() == a.front());
            CHECK(b.back() == a.back());
            CHECK(area.rect().contains(geometry_bounds(refined.edges[i].geometry), 1e-6));
        }
    }
}

TEST_CASE("layered output on calc graphs is reachable and contained") {
    layered::LayeredParams p;
    DrawingArea area{29.7, 21};
    for (const auto& g : corpus(bench::GraphKind::Calc, 3, 120, 7)) {
        auto r = layered::run_layered_pipeline(g, area, p);
        CHECK(is_subgraph(r.subgraph, g));
        check_fractions(r.metrics);
        REQUIRE(r.subgraph.start());
        CHECK(*r.subgraph.start() == *g.start());
        CHECK(layered::all_reachable(r.structure));
        Rect box = area.rect();
        for (const auto& v : r.subgraph.vertices())
            CHECK(box.contains(Rect{r.layout.positions.at(v.id), v.width, v.height}, 1e-6));
        for (const auto& e : r.layout.edges) {
            CHECK(box.contains(geometry_bounds(e.geometry), 1e-6));
            CHECK(e.stroke_width > 0);
        }
    }
}

TEST_CASE("orthogonal routes use axis-parallel pieces and distinct columns per gap") {
    layered::LayeredParams p;
    for (const auto& g : corpus(bench::GraphKind::Calc, 3, 90, 9)) {
        auto r = layered::run_layered_pipeline(g, {29.7, 21}, p);
        for (const auto& e : r.orthogonal.edges) {
            CHECK(e.geometry.style == EdgeStyle::Orthogonal);
            const auto& pts = e.geometry.points;
            for (std::size_t i = 1; i < pts.size(); ++i)
                CHECK((pts[i].x == doctest::Approx(pts[i - 1].x) ||
                       pts[i].y == doctest::Approx(pts[i - 1].y)));
        }
        for (const auto& order : r.plan.gap_order) {
            std::set<double> xs;
            for (auto h : order) xs.insert(r.plan.hops[h].x);
            CHECK(xs.size() == order.size());
            for (std::size_t i = 1; i < order.size(); ++i)
                CHECK(r.plan.hops[order[i - 1]].x < r.plan.hops[order[i]].x);
        }
    }
}

TEST_CASE("heavy-tailed weights favour retained weight over retained count") {
    layered::LayeredParams p;
    for (const auto& g : corpus(bench::GraphKind::Calc, 3, 358, 1)) {
        auto r = layered::run_layered_pipeline(g, {29.7, 21}, p);
        CHECK(r.metrics.vertex_fraction() < 1.0);
        CHECK(r.metrics.vertex_weight_fraction() > r.metrics.vertex_fraction());
    }
}

TEST_CASE("rendered pipeline output is deterministic") {
    auto g = corpus(bench::GraphKind::Calc, 1, 80, 4)[0];
    layered::LayeredParams p;
    p.bezier = true;
    auto r = layered::run_layered_pipeline(g, {29.7, 21}, p);
    RenderStyle style;
    style.edge_style = EdgeStyle::CubicChain;
    auto a = render_svg(r.layout, r.subgraph, {29.7, 21}, style);
    auto b = render_svg(layered::run_layered_pipeline(g, {29.7, 21}, p).layout, r.subgraph,
                        {29.7, 21}, style);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
}

}
