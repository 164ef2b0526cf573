#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "areagraph/layered_layout.hpp"
#include "layered_internal.hpp"

namespace areagraph::layered {

using namespace detail;

namespace {

// Light vertices and edges below the threshold go first; s is exempt.
WeightedGraph threshold_preprocess(const WeightedGraph& g, double threshold, RunLog& log) {
    WeightedGraph out(true);
    const std::string& s = *g.start();
    for (const Vertex& v : g.vertices())
        if (v.id == s || v.weight >= threshold) out.add_vertex(v);
        else log.push_back("preprocess-vertex " + v.id + " (w=" + fmt(v.weight) + ")");
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (!out.has_vertex(ed.src) || !out.has_vertex(ed.dst)) continue;
        if (ed.weight < threshold) {
            log.push_back("preprocess-edge " + ed.src + "-" + ed.dst + " (w=" + fmt(ed.weight) + ")");
            continue;
        }
        out.add_edge(ed);
    }
    out.set_start(s);
    return out;
}

WeightedGraph reachable_part(const WeightedGraph& g, RunLog& log) {
    auto keep = reachable_from(g, *g.start());
    for (const Vertex& v : g.vertices())
        if (!keep.count(v.id)) log.push_back("unreachable " + v.id);
    WeightedGraph out = induced_subgraph(g, keep);
    out.set_start(*g.start());
    return out;
}

void check_stage(const LayerStructure& ls, const char* stage) {
    if (!all_reachable(ls))
        throw std::logic_error(std::string("unreachable vertex after ") + stage);
}

}  // namespace

LayeredResult run_layered_pipeline(const WeightedGraph& g, const DrawingArea& area,
                                   const LayeredParams& params) {
    params.validate();
    if (!g.directed()) throw LayeredError("layered mode needs a directed graph");
    if (!g.start()) throw LayeredError("layered mode needs a start vertex");
    const auto t0 = std::chrono::steady_clock::now();
    LayeredResult res;
    RunLog& log = res.log;

    {
        const Vertex& s = g.vertex(g.require_index(*g.start()));
        if (s.width > area.width || s.height > area.height)
            throw LayeredError("start vertex " + s.id + " (" + fmt(s.width) + "x" +
                               fmt(s.height) + " cm) does not fit into " + fmt(area.width) + "x" +
                               fmt(area.height) + " cm");
    }

    WeightedGraph work = params.threshold > 0 ? threshold_preprocess(g, params.threshold, log) : g;
    work = reachable_part(work, log);

    auto cb = break_cycles(work, params.cycle_mode, params.cycle_objective, params.exact_node_budget);
    log.insert(log.end(), cb.log.begin(), cb.log.end());
    for (EdgeIndex e : cb.reverted) {
        const Edge& ed = work.edge(e);
        res.reverted.emplace_back(ed.src, ed.dst);
        log.push_back("revert-edge " + ed.src + "-" + ed.dst + " (w=" + fmt(ed.weight) + ")");
    }

    const std::size_t n = work.vertex_count();
    auto arcs = oriented_arcs(work, cb.reverted);
    std::size_t k = longest_path_length(n, arcs);
    std::size_t n_max = std::max<std::size_t>(1, (n + k - 1) / k);
    std::vector<std::string> ids;
    for (const Vertex& v : work.vertices()) ids.push_back(v.id);
    auto layer = assign_layers(n, arcs, params.layering, n_max, ids);
    log.push_back("layers k=" + std::to_string(k) + " n_max=" + std::to_string(n_max));

    LayerStructure ls = LayerStructure::build(work, cb.reverted, layer);
    std::vector<VertexIndex> pool;
    auto add_pool = [&](const std::vector<VertexIndex>& v) { pool.insert(pool.end(), v.begin(), v.end()); };

    add_pool(remove_vertices_for_height(ls, area.height, params, &log));
    check_stage(ls, "height removal");
    add_pool(remove_layers_for_width(ls, area.width, params, &log));
    check_stage(ls, "width removal");
    minimize_crossings(ls, params.crossing, params.crossing_rounds, params.crossing_convention, true);
    remove_edges_to_budget(ls, params.crossing_budget, &log);
    check_stage(ls, "edge removal");
    add_pool(apply_gaps_and_repair(ls, area.height, params, &log));
    check_stage(ls, "gap repair");
    if (params.reinsert) {
        reinsert_vertices(ls, work, pool, area, params, &log);
        check_stage(ls, "reinsertion");
    }

    Placement pl = assign_coordinates(ls, area, params);
    res.plan = route_edges(ls, pl, params);
    log.insert(log.end(), res.plan.log.begin(), res.plan.log.end());
    res.orthogonal = orthogonal_layout(ls, pl, res.plan);
    res.layout = params.bezier ? to_cubic_bezier(ls, pl, res.plan, params) : res.orthogonal;

    // Retained subgraph in input terms; edges created by weight transfer are
    // drawn but have no counterpart in the input.
    WeightedGraph sub(true);
    for (VertexIndex v = 0; v < ls.vertices.size(); ++v)
        if (ls.present[v]) sub.add_vertex(g.vertex(g.require_index(ls.vertices[v].id)));
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& le : ls.edges) {
        if (!le.alive) continue;
        const std::string& a = ls.vertices[le.src].id;
        const std::string& b = ls.vertices[le.dst].id;
        auto in = g.find_edge(a, b);
        if (!in || !seen.insert({a, b}).second) continue;
        sub.add_edge(g.edge(*in));
    }
    sub.set_start(*g.start());
    res.subgraph = std::move(sub);
    res.structure = std::move(ls);

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.metrics = compute_metrics(g, res.subgraph, res.layout, secs, params.crossing_convention);
    res.metrics.iterations = std::size_t(params.relax_iterations) * res.plan.gap_order.size();
    return res;
}

}  // namespace areagraph::layered
