#pragma once

#include <cstddef>
#include <string>

#include "areagraph/graph.hpp"
#include "areagraph/layout.hpp"

namespace areagraph {

// How a single crossing of edges e and e' is weighted.
enum class CrossingWeight { Product, Sum };

inline double crossing_weight(double w1, double w2, CrossingWeight c) {
    return c == CrossingWeight::Product ? w1 * w2 : w1 + w2;
}

struct CrossingStats {
    std::size_t count = 0;
    double weight = 0.0;
};

// Exhaustive pairwise test over the flattened edge geometry. Edges sharing an
// endpoint vertex are not counted.
CrossingStats count_crossings(const Layout& layout,
                              CrossingWeight convention = CrossingWeight::Product);

struct RunMetrics {
    std::size_t input_vertices = 0;
    std::size_t retained_vertices = 0;
    double input_vertex_weight = 0.0;
    double retained_vertex_weight = 0.0;
    std::size_t input_edges = 0;
    std::size_t retained_edges = 0;
    double input_edge_weight = 0.0;
    double retained_edge_weight = 0.0;
    std::size_t crossings = 0;
    double crossing_weight = 0.0;
    double runtime_seconds = 0.0;
    // Deterministic work counter (force or relaxation iterations).
    std::size_t iterations = 0;

    double vertex_fraction() const;
    double vertex_weight_fraction() const;
    double edge_fraction() const;
    double edge_weight_fraction() const;
};

// Retained totals are taken with the input's weights. Throws GraphError when
// output is not a subgraph of input.
RunMetrics compute_metrics(const WeightedGraph& input, const WeightedGraph& output,
                           const Layout& layout, double runtime_seconds,
                           CrossingWeight convention = CrossingWeight::Product);

std::string metrics_to_text(const RunMetrics& m, bool include_runtime);
std::string metrics_to_json(const RunMetrics& m, bool include_runtime);

}  // namespace areagraph
