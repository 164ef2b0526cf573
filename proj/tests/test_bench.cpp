#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "areagraph/bench.hpp"
#include "areagraph/layered_layout.hpp"
#include "support.hpp"

using namespace areagraph;
using namespace areagraph::bench;

namespace {

WeightedGraph unit_squares(std::size_t n) {
    WeightedGraph g(false);
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(testgen::box(testgen::vid(i), 1, 1, 1));
    return g;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("corpus spec validation") {
    CorpusSpec s;
    s.n = 0;
    CHECK_THROWS_AS(generate_corpus(s), std::invalid_argument);
    s = {};
    s.n_max = 50;
    CHECK_THROWS_AS(generate_corpus(s), std::invalid_argument);
    s = {};
    s.edge_density = 1000;
    CHECK_THROWS_AS(generate_corpus(s), std::invalid_argument);
    s = {};
    s.n = 1;
    CHECK(generate_corpus(s).at(0).vertex_count() == 1);
}

TEST_CASE("corpus is deterministic per seed") {
    for (auto kind : {GraphKind::Collab, GraphKind::Calc}) {
        CorpusSpec s;
        s.kind = kind;
        s.count = 3;
        s.n = 60;
        s.n_max = 90;
        auto a = generate_corpus(s);
        auto b = generate_corpus(s);
        REQUIRE(a.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(a[i] == b[i]);
            CHECK(a[i].vertex_count() >= 60);
            CHECK(a[i].vertex_count() <= 90);
        }
        s.seed = 2;
        CHECK_FALSE(generate_corpus(s)[0] == a[0]);
    }
}

TEST_CASE("collab graphs are undirected with the requested density") {
    CorpusSpec s;
    s.n = 200;
    auto g = generate_corpus(s)[0];
    CHECK_FALSE(g.directed());
    CHECK(double(g.edge_count()) / 200 == doctest::Approx(2.7).epsilon(0.05));
    for (const auto& v : g.vertices()) {
        CHECK(v.weight >= 1);
        CHECK(v.height == s.label_height);
        CHECK(v.width >= s.label_min * s.char_width + s.label_pad - 1e-9);
    }
}

TEST_CASE("calc graphs without back edges are acyclic and reachable") {
    CorpusSpec s;
    s.kind = GraphKind::Calc;
    s.back_edge_fraction = 0;
    s.count = 5;
    s.n = 80;
    for (const auto& g : generate_corpus(s)) {
        CHECK(g.directed());
        REQUIRE(g.start());
        auto r = layered::break_cycles(g, layered::CycleMode::Exact, layered::CycleObjective::Weight);
        CHECK(r.reverted.empty());
        CHECK(reachable_from(g, *g.start()).size() == g.vertex_count());
    }
    s.back_edge_fraction = 0.2;
    s.count = 1;
    auto g = generate_corpus(s)[0];
    auto r = layered::break_cycles(g, layered::CycleMode::Heuristic, layered::CycleObjective::Weight);
    CHECK_FALSE(r.reverted.empty());
}

TEST_CASE("power-law weights are heavy-tailed") {
    CorpusSpec s;
    s.n = 300;
    auto g = generate_corpus(s)[0];
    std::vector<double> w;
    for (const auto& v : g.vertices()) w.push_back(v.weight);
    std::sort(w.rbegin(), w.rend());
    double top = std::accumulate(w.begin(), w.begin() + 30, 0.0);
    CHECK(top / g.total_vertex_weight() > 0.3);
}

TEST_CASE("shelf packing") {
    CHECK(shelf_packing_fits(unit_squares(4), {2.5, 2.5}, 0.3));
    CHECK_FALSE(shelf_packing_fits(unit_squares(5), {2.5, 2.5}, 0.3));
    CHECK(shelf_packing_fits(unit_squares(6), {3.7, 2.5}, 0.3));
}

TEST_CASE("oracle examples") {
    force::ForceParams p;
    auto big = unit_squares(5);
    auto all = oracle_optimal_subgraph(big, {20, 20}, default_feasibility(p));
    CHECK(all.best_weight == 5);

    auto eight = unit_squares(8);
    auto four = oracle_optimal_subgraph(eight, {2.5, 2.5}, default_feasibility(p));
    CHECK(four.best_weight == 4);
    CHECK(four.best_subset.size() == 4);
    CHECK_THROWS_AS(oracle_optimal_subgraph(unit_squares(11), {5, 5}, default_feasibility(p)),
                    std::invalid_argument);
}

TEST_CASE("force heuristic never beats the oracle") {
    force::ForceParams p;
    p.preprocess = false;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        testgen::Rng rng(seed);
        WeightedGraph g(false);
        for (std::size_t i = 0; i < 7; ++i)
            g.add_vertex(testgen::box(testgen::vid(i), rng.integer(1, 9), rng.uniform(0.5, 1.5),
                                      rng.uniform(0.4, 0.8)));
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = i + 1; j < 7; ++j)
                if (rng.coin(0.3)) g.add_edge({testgen::vid(i), testgen::vid(j), 1});
        DrawingArea area{3.0, 2.2};
        auto best = oracle_optimal_subgraph(g, area, default_feasibility(p));
        double got = 0;
        try {
            got = force::run_force_pipeline(g, area, p).subgraph.total_vertex_weight();
        } catch (const force::EmptyDrawingError&) {
        }
        CHECK(got <= best.best_weight + 1e-9);
    }
}

TEST_CASE("experiment names") {
    for (auto id : {ExperimentId::CPre, ExperimentId::CLen, ExperimentId::TwoPhase,
                    ExperimentId::Threshold, ExperimentId::CrossingMin})
        CHECK(parse_experiment(experiment_name(id)) == id);
    CHECK_THROWS(parse_experiment("nope"));
}

TEST_CASE("crossing experiment reports three variants") {
    ExperimentConfig c;
    c.id = ExperimentId::CrossingMin;
    c.seeds = {1, 2};
    c.n = 60;
    auto t = run_table_experiment(c);
    CHECK(t.variants.size() == 3);
    CHECK(t.rows.size() == 6);
    auto again = run_table_experiment(c);
    CHECK(again.csv == t.csv);
    CHECK(t.text.find("runtime") == std::string::npos);
}

}
