#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "areagraph/geometry.hpp"
#include "areagraph/graph.hpp"
#include "areagraph/layout.hpp"
#include "areagraph/metrics.hpp"

namespace areagraph::force {

struct ForceParams {
    double l_unit = 2.0;  // desired edge length (cm)

    // Weights of the individual forces in the total displacement.
    double alpha_r = 0.01;
    double alpha_a = 0.01;
    double alpha_g = 0.005;
    double alpha_e = 0.0075;
    double alpha_f = 0.01;

    double c_deg = 0.5;
    double c_len = 0.9;
    // Removal thresholds (boundary-to-boundary, cm); unset means 0.1 and
    // 0.15 times l_unit.
    std::optional<double> l_adj;
    std::optional<double> l_nadj;
    double c_pre = 0.7;
    bool preprocess = true;

    double inner_fraction = 0.5;
    int shrink_steps = 25;
    double cooling = 0.99;
    double eps_move = 1e-3;
    int max_iterations = 500;
    // Per-iteration displacement cap as a multiple of l_unit.
    double max_step_factor = 1.0;
    bool gravity_active_only_initially = true;
    bool two_phase_equilibrium = false;
    std::uint64_t seed = 1;

    double adj_threshold() const { return l_adj.value_or(0.1 * l_unit); }
    double nadj_threshold() const { return l_nadj.value_or(0.15 * l_unit); }

    // Throws std::invalid_argument on inconsistent values.
    void validate() const;
};

struct Frame {
    Rect bounds;
};

struct ActiveForces {
    bool gravity = false;
    bool edge_repulsion = true;
};

// --- individual forces; each returns the vector acting on v ---------------

// Repels v from u with magnitude l_unit^2 / d.
Vec2 force_repulsive(Point u, Point v, double l_unit);
// Attracts v towards its neighbour u with magnitude d^2 / l_unit.
Vec2 force_attractive(Point u, Point v, double l_unit);
// Repels v away from an edge crossing v's inner region. `tie_side` (+1/-1)
// picks the perpendicular when v's centre lies on the edge.
Vec2 force_edge_repulsion(const Rect& v, const Segment& edge, double l_unit,
                          double inner_fraction = 0.5, int tie_side = 1);
Vec2 force_gravity(Point v, Point center);
// Virtual frame resistance; used for pressure only, never for motion.
Vec2 force_frame_virtual(const Rect& v, const Frame& frame, double l_unit);

inline constexpr double kFrameDistanceFloor = 1e-3;

// --- pressure and stress ---------------------------------------------------

struct PressureReport {
    std::array<double, 8> octant_length{};  // |sum of vectors| per octant
    double pressure = 0.0;
};

// Octant index 0..7 of a non-zero vector, counter-clockwise from +x in
// steps of 45 degrees.
int octant_of(Vec2 v);
PressureReport vertex_pressure(std::span<const Vec2> forces);
// Pressure from already summed octant vectors.
PressureReport pressure_from_octants(const std::array<Vec2, 8>& sums);

double vertex_stress(double pressure, double weight, std::size_t degree, double c_deg);
// sum(w(e')) * |E'| / w(e) over the crossing edges E'.
double edge_stress(double weight, std::span<const double> crossing_weights);

// --- pipeline stages -------------------------------------------------------

struct EquilibriumResult {
    std::vector<Point> positions;  // by vertex index
    int iterations = 0;
    bool converged = false;
};

// Cooled force iteration from `positions` (indexed like g.vertices()).
EquilibriumResult compute_equilibrium(const WeightedGraph& g, std::vector<Point> positions,
                                      const std::optional<Frame>& frame,
                                      const ForceParams& params, ActiveForces active,
                                      Point center);

// Minimum edge length below l_adj or minimum non-adjacent distance below l_nadj.
bool removal_guard(const WeightedGraph& g, const std::vector<Point>& positions,
                   const ForceParams& params);

enum class RemovalKind { Vertex, Edge };

struct RemovalOutcome {
    WeightedGraph graph;
    std::vector<Point> positions;
    RemovalKind kind = RemovalKind::Vertex;
    std::string id;  // vertex id, or "src-dst" for an edge
    double stress = 0.0;
};

// Removes the max-stress vertex (average edge length <= l_unit * c_len) or
// the max-stress edge. Throws std::logic_error when the guard does not hold.
RemovalOutcome removal_step(const WeightedGraph& g, const std::vector<Point>& positions,
                            const ForceParams& params, const std::optional<Frame>& frame,
                            ActiveForces active);

// Frame after `step` of `steps` uniform, centred reductions from `initial`
// towards the target dimensions.
Frame shrink_frame(const Frame& initial, const DrawingArea& target, int step, int steps);

// Minimal axis-wise translation of a rectangle centre into the frame.
Point push_inside(Point center, double width, double height, const Frame& frame);

// Number of vertices the preprocessing keeps (before rounding up).
double preprocess_keep_count(const WeightedGraph& g, const DrawingArea& area,
                             const ForceParams& params);
WeightedGraph preprocess_by_weight(const WeightedGraph& g, const DrawingArea& area,
                                   const ForceParams& params);

struct ForceResult {
    WeightedGraph subgraph;
    Layout layout;
    RunMetrics metrics;
    std::vector<std::string> log;
    Frame final_frame;
};

class EmptyDrawingError : public std::runtime_error {
public:
    EmptyDrawingError(const std::string& what, RunMetrics m)
        : std::runtime_error(what), metrics(m) {}
    RunMetrics metrics;
};

ForceResult run_force_pipeline(const WeightedGraph& g, const DrawingArea& area,
                               const ForceParams& params);

// Checks the final-layout guarantees: containment in the area, disjoint
// rectangles, edge lengths >= l_adj, non-adjacent distances >= l_nadj.
// Returns an empty string when all hold, else a description of the first
// violation.
std::string check_final_layout(const WeightedGraph& g, const Layout& layout,
                               const DrawingArea& area, const ForceParams& params);

}  // namespace areagraph::force
