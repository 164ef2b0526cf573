#include "areagraph/metrics.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace areagraph {

CrossingStats count_crossings(const Layout& layout, CrossingWeight convention) {
    std::vector<std::vector<Segment>> pieces;
    std::vector<Rect> boxes;
    pieces.reserve(layout.edges.size());
    for (const auto& e : layout.edges) {
        pieces.push_back(flatten(e.geometry));
        boxes.push_back(geometry_bounds(e.geometry));
    }
    CrossingStats out;
    for (std::size_t i = 0; i < layout.edges.size(); ++i) {
        const auto& ei = layout.edges[i];
        for (std::size_t j = i + 1; j < layout.edges.size(); ++j) {
            const auto& ej = layout.edges[j];
            if (ei.src == ej.src || ei.src == ej.dst || ei.dst == ej.src || ei.dst == ej.dst)
                continue;
            const Rect& a = boxes[i];
            const Rect& b = boxes[j];
            if (a.right() < b.left() || b.right() < a.left() || a.bottom() < b.top() ||
                b.bottom() < a.top())
                continue;
            std::size_t n = 0;
            for (const auto& s : pieces[i])
                for (const auto& t : pieces[j])
                    if (segments_cross_properly(s, t)) ++n;
            out.count += n;
            out.weight += double(n) * crossing_weight(ei.weight, ej.weight, convention);
        }
    }
    return out;
}

namespace {
double frac(double a, double b) { return b > 0 ? a / b : 1.0; }
}  // namespace

double RunMetrics::vertex_fraction() const { return frac(double(retained_vertices), double(input_vertices)); }
double RunMetrics::vertex_weight_fraction() const { return frac(retained_vertex_weight, input_vertex_weight); }
double RunMetrics::edge_fraction() const { return frac(double(retained_edges), double(input_edges)); }
double RunMetrics::edge_weight_fraction() const { return frac(retained_edge_weight, input_edge_weight); }

RunMetrics compute_metrics(const WeightedGraph& input, const WeightedGraph& output,
                           const Layout& layout, double runtime_seconds,
                           CrossingWeight convention) {
    RunMetrics m;
    m.input_vertices = input.vertex_count();
    m.input_edges = input.edge_count();
    m.input_vertex_weight = input.total_vertex_weight();
    m.input_edge_weight = input.total_edge_weight();
    for (const auto& v : output.vertices()) {
        auto i = input.index_of(v.id);
        if (!i) throw GraphError("output vertex " + v.id + " is not in the input graph");
        ++m.retained_vertices;
        m.retained_vertex_weight += input.vertex(*i).weight;
    }
    for (const auto& e : output.edges()) {
        auto i = input.find_edge(e.src, e.dst);
        if (!i) throw GraphError("output edge " + e.src + "-" + e.dst + " is not in the input graph");
        ++m.retained_edges;
        m.retained_edge_weight += input.edge(*i).weight;
    }
    auto c = count_crossings(layout, convention);
    m.crossings = c.count;
    m.crossing_weight = c.weight;
    m.runtime_seconds = runtime_seconds;
    return m;
}

std::string metrics_to_text(const RunMetrics& m, bool include_runtime) {
    char buf[1024];
    std::snprintf(buf, sizeof buf,
                  "vertices contained in drawing: %zu/%zu (%.1f %%)\n"
                  "vertex weight contained in drawing: %.1f %%\n"
                  "edges contained in drawing: %zu/%zu (%.1f %%)\n"
                  "edge weight contained in drawing: %.1f %%\n"
                  "crossings: %zu\n"
                  "weight of crossings: %.2f\n",
                  m.retained_vertices, m.input_vertices, 100 * m.vertex_fraction(),
                  100 * m.vertex_weight_fraction(), m.retained_edges, m.input_edges,
                  100 * m.edge_fraction(), 100 * m.edge_weight_fraction(), m.crossings,
                  m.crossing_weight);
    std::string out = buf;
    if (include_runtime) {
        std::snprintf(buf, sizeof buf, "runtime (s): %.3f\n", m.runtime_seconds);
        out += buf;
    }
    return out;
}

std::string metrics_to_json(const RunMetrics& m, bool include_runtime) {
    nlohmann::ordered_json j;
    j["input_vertices"] = m.input_vertices;
    j["retained_vertices"] = m.retained_vertices;
    j["input_vertex_weight"] = m.input_vertex_weight;
    j["retained_vertex_weight"] = m.retained_vertex_weight;
    j["vertex_fraction"] = m.vertex_fraction();
    j["vertex_weight_fraction"] = m.vertex_weight_fraction();
    j["input_edges"] = m.input_edges;
    j["retained_edges"] = m.retained_edges;
    j["input_edge_weight"] = m.input_edge_weight;
    j["retained_edge_weight"] = m.retained_edge_weight;
    j["edge_fraction"] = m.edge_fraction();
    j["edge_weight_fraction"] = m.edge_weight_fraction();
    j["crossings"] = m.crossings;
    j["crossing_weight"] = m.crossing_weight;
    j["iterations"] = m.iterations;
    if (include_runtime) j["runtime_seconds"] = m.runtime_seconds;
    return j.dump();
}

}  // namespace areagraph
