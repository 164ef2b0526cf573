#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "areagraph/geometry.hpp"
#include "areagraph/graph.hpp"
#include "areagraph/layout.hpp"
#include "areagraph/metrics.hpp"

namespace areagraph::layered {

class LayeredError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CycleMode { Exact, Heuristic };
enum class CycleObjective { Count, Weight };
enum class LayeringMethod { CoffmanGraham, ListScheduling, MinLayers };
enum class CrossingMethod { Median, AdjacentExchange, AdjacentExchangeWeighted };
enum class PortMode { Single, PerEdge };

struct LayeredParams {
    double layer_gap = 1.0;     // horizontal gap between layers (cm)
    double gap_vv = 0.5;        // vertex/vertex
    double gap_ee = 0.25;       // vertex/edge and edge/edge
    double gap_parallel = 0.1;  // two edges running side by side
    double crossing_budget = std::numeric_limits<double>::infinity();
    double stroke_coeff = 0.05;  // cm per weight^exponent
    double stroke_exponent = 1.0 / 3.0;
    double stroke_min = 0.02;
    double stroke_max = 0.3;
    PortMode ports = PortMode::Single;
    bool bezier = false;
    // Vertices and edges lighter than this are dropped first; 0 disables.
    double threshold = 0.0;
    CycleMode cycle_mode = CycleMode::Exact;
    CycleObjective cycle_objective = CycleObjective::Weight;
    std::size_t exact_node_budget = 1'000'000;
    LayeringMethod layering = LayeringMethod::CoffmanGraham;
    CrossingMethod crossing = CrossingMethod::AdjacentExchange;
    int crossing_rounds = 4;
    CrossingWeight crossing_convention = CrossingWeight::Product;
    bool reinsert = true;
    int coordinate_sweeps = 4;
    int relax_iterations = 100;

    void validate() const;  // throws std::invalid_argument
};

// --- cycle breaking -----------------------------------------------------------

struct CycleBreakResult {
    std::vector<EdgeIndex> reverted;  // indices into the input graph
    double reverted_weight = 0.0;
    bool exact = false;
    std::vector<std::string> log;
};

CycleBreakResult break_cycles(const WeightedGraph& g, CycleMode mode, CycleObjective objective,
                              std::size_t node_budget = 1'000'000);

// Arcs (tail, head) after reversing the given edges.
std::vector<std::pair<VertexIndex, VertexIndex>> oriented_arcs(
    const WeightedGraph& g, const std::vector<EdgeIndex>& reverted);

bool is_acyclic(std::size_t n, const std::vector<std::pair<VertexIndex, VertexIndex>>& arcs);

// Number of vertices on a longest directed path.
std::size_t longest_path_length(std::size_t n,
                                const std::vector<std::pair<VertexIndex, VertexIndex>>& arcs);
std::size_t longest_path_length(const WeightedGraph& dag);

// Layer index per vertex; every arc goes to a strictly later layer.
std::vector<int> assign_layers(std::size_t n,
                               const std::vector<std::pair<VertexIndex, VertexIndex>>& arcs,
                               LayeringMethod method, std::size_t n_max,
                               const std::vector<std::string>& ids = {});

// --- weight transfer ------------------------------------------------------------

// For every in-edge (u,v) and out-edge (v,w) with u != w, edge (u,w) gains
// min{w(u,v), w(v,w)}; it is created when absent. v itself is left in place.
void transfer_weight(WeightedGraph& g, std::string_view v);

// --- layer structure ------------------------------------------------------------

// Edge of the working drawing. (src, dst) is the input orientation; reversed
// edges are drawn from dst to src.
struct LayerEdge {
    VertexIndex src = 0;
    VertexIndex dst = 0;
    double weight = 1.0;
    bool reversed = false;
    bool transferred = false;  // created by weight transfer
    bool alive = true;

    VertexIndex tail() const { return reversed ? dst : src; }
    VertexIndex head() const { return reversed ? src : dst; }
};

struct LayerItem {
    bool dummy = false;
    std::size_t index = 0;  // vertex index, or edge index for a dummy

    friend bool operator==(const LayerItem&, const LayerItem&) = default;
};

struct LayerStructure {
    std::vector<Vertex> vertices;
    std::optional<VertexIndex> start;
    std::vector<char> present;   // per vertex
    std::vector<int> layer_of;   // per vertex, -1 when absent
    std::vector<LayerEdge> edges;
    std::vector<std::vector<LayerItem>> layers;  // left to right, top to bottom

    static LayerStructure build(const WeightedGraph& g, const std::vector<EdgeIndex>& reverted,
                                const std::vector<int>& layer);

    bool is_present(const std::string& id) const;
    std::optional<VertexIndex> index_of(const std::string& id) const;
    std::vector<std::string> layer_ids(std::size_t layer) const;  // dummies as "~src-dst"
    std::size_t real_count() const;
    bool has_dummies() const;
};

// Log of a layered run; each removal records its importance value.
using RunLog = std::vector<std::string>;

double vertex_importance(const Vertex& v);
// True when a is less important than b (ties: lower weight, then id).
bool less_important(const Vertex& a, const Vertex& b);

// Rebuilds dummy items so every edge spans consecutive layers; removes empty
// layers first.
void insert_dummies(LayerStructure& ls);
void strip_dummies(LayerStructure& ls);

// Height of one layer: item heights (dummies: 0) plus separators.
double layer_height(const LayerStructure& ls, std::size_t layer, const LayeredParams& p);
double layer_width(const LayerStructure& ls, std::size_t layer);
double total_width(const LayerStructure& ls, const LayeredParams& p);

// Removes a vertex with weight transfer; returns false for the start vertex.
bool remove_vertex(LayerStructure& ls, VertexIndex v, RunLog* log, const std::string& reason);
// Removes every present vertex not reachable from the start vertex; returns
// the removed ids.
std::vector<VertexIndex> cascade_unreachable(LayerStructure& ls, RunLog* log);
bool all_reachable(const LayerStructure& ls);

// Returns removed vertex indices. Throws LayeredError when the start vertex
// alone is taller than the area.
std::vector<VertexIndex> remove_vertices_for_height(LayerStructure& ls, double area_height,
                                                    const LayeredParams& p, RunLog* log = nullptr);

double layer_importance(const LayerStructure& ls, std::size_t layer);

std::vector<VertexIndex> remove_layers_for_width(LayerStructure& ls, double area_width,
                                                 const LayeredParams& p, RunLog* log = nullptr);

// Crossings between consecutive layers under the current orders.
struct CrossingTotals {
    std::size_t count = 0;
    double weight = 0.0;
};
CrossingTotals count_layer_crossings(const LayerStructure& ls,
                                     CrossingWeight convention = CrossingWeight::Product);

// Inserts dummies, then sweeps. With `reset_order` the layers first get a
// depth-first order from the leftmost layer.
void minimize_crossings(LayerStructure& ls, CrossingMethod method, int rounds,
                        CrossingWeight convention = CrossingWeight::Product,
                        bool reset_order = false);

// w(e) / sum of the weights of the edges crossing e; +inf when crossing-free.
double edge_importance(const LayerStructure& ls, std::size_t edge);

std::vector<std::size_t> remove_edges_to_budget(LayerStructure& ls, double budget,
                                                RunLog* log = nullptr);

std::vector<VertexIndex> apply_gaps_and_repair(LayerStructure& ls, double area_height,
                                               const LayeredParams& p, RunLog* log = nullptr);

// Reinserts pooled vertices; returns the reinserted indices.
// `source` is the graph the structure was built from; only its edges between
// present vertices are restored.
std::vector<VertexIndex> reinsert_vertices(LayerStructure& ls, const WeightedGraph& source,
                                           std::vector<VertexIndex> pool, const DrawingArea& area,
                                           const LayeredParams& p, RunLog* log = nullptr);

// --- geometry --------------------------------------------------------------------

struct Placement {
    std::vector<double> layer_left;   // x of each layer band
    std::vector<double> layer_width;
    std::vector<std::vector<double>> y;  // centre y per item, parallel to layers
};

Placement assign_coordinates(const LayerStructure& ls, const DrawingArea& area,
                             const LayeredParams& p);

// One crossing of an edge through an inter-layer gap.
struct Hop {
    std::size_t edge = 0;
    std::size_t gap = 0;  // between layer gap and gap + 1
    Point left;           // where the edge leaves the left layer band
    Point right;          // where it enters the right one
    Point port_left;      // attachment on the left item
    Point port_right;
    double x = 0.0;       // vertical segment
};

struct RoutingPlan {
    std::vector<Hop> hops;
    std::vector<std::vector<std::size_t>> gap_order;  // hop indices, left to right
    std::vector<double> stroke_width;                 // per layer edge (cm)
    std::vector<std::string> log;
};

double stroke_width(double weight, const LayeredParams& p);

// Cost of drawing a left of b in one gap: number of proper crossings.
int order_cost(const Hop& a, const Hop& b);

RoutingPlan route_edges(const LayerStructure& ls, const Placement& pl, const LayeredParams& p);
Layout orthogonal_layout(const LayerStructure& ls, const Placement& pl, const RoutingPlan& plan);
Layout to_cubic_bezier(const LayerStructure& ls, const Placement& pl, RoutingPlan plan,
                       const LayeredParams& p);

// --- pipeline ----------------------------------------------------------------------

struct LayeredResult {
    WeightedGraph subgraph;  // retained input vertices and edges
    Layout layout;           // orthogonal, or cubic when params.bezier
    Layout orthogonal;
    RoutingPlan plan;
    LayerStructure structure;
    RunMetrics metrics;
    RunLog log;
    std::vector<std::pair<std::string, std::string>> reverted;
};

LayeredResult run_layered_pipeline(const WeightedGraph& g, const DrawingArea& area,
                                   const LayeredParams& params);

}  // namespace areagraph::layered
