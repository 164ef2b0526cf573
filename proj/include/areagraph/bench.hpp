#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "areagraph/force_layout.hpp"
#include "areagraph/geometry.hpp"
#include "areagraph/graph.hpp"
#include "areagraph/layered_layout.hpp"

namespace areagraph::bench {

enum class GraphKind { Collab, Calc };
enum class WeightLaw { PowerLaw, Uniform };

struct CorpusSpec {
    std::uint64_t seed = 1;
    std::size_t count = 1;
    // Vertex count; each graph draws uniformly from [n, n_max] when n_max > n.
    std::size_t n = 100;
    std::size_t n_max = 0;
    // Average number of edges per vertex; unset means 2.7 (collab) or 1.5 (calc).
    std::optional<double> edge_density;
    WeightLaw weight_law = WeightLaw::PowerLaw;
    double exponent = 2.0;
    double uniform_lo = 1.0;
    double uniform_hi = 10.0;
    // Label length in characters, uniform in [label_min, label_max].
    int label_min = 6;
    int label_max = 14;
    double char_width = 0.2;   // cm
    double label_pad = 0.3;    // cm
    double label_height = 0.5; // cm
    GraphKind kind = GraphKind::Collab;
    double back_edge_fraction = 0.05;  // calc graphs only
    // Chance that a further edge of a new collab vertex closes a triangle.
    double triad_probability = 0.8;

    double density() const { return edge_density.value_or(kind == GraphKind::Calc ? 1.5 : 2.7); }

    void validate() const;  // throws std::invalid_argument
};

std::vector<WeightedGraph> generate_corpus(const CorpusSpec& spec);

// --- oracle ----------------------------------------------------------------

using FeasibilityCheck =
    std::function<bool(const WeightedGraph& subset, const DrawingArea& area)>;

// Default check: an exact shelf packing with l_nadj separation, falling back
// to a force-pipeline run that must keep the whole subset.
FeasibilityCheck default_feasibility(const force::ForceParams& params);

// Shelf packing of all vertices: rows separated by `gap`, items in a row
// separated by `gap`. Exhaustive over row assignments.
bool shelf_packing_fits(const WeightedGraph& g, const DrawingArea& area, double gap);

struct OracleResult {
    double best_weight = 0.0;
    std::vector<std::string> best_subset;
    std::size_t subsets_checked = 0;
};

// Exhaustive over all vertex subsets; |V| <= 10.
OracleResult oracle_optimal_subgraph(const WeightedGraph& g, const DrawingArea& area,
                                     const FeasibilityCheck& feasible);

// --- experiments -------------------------------------------------------------

enum class ExperimentId { CPre, CLen, TwoPhase, Threshold, CrossingMin };

ExperimentId parse_experiment(const std::string& name);
std::string experiment_name(ExperimentId id);

struct ExperimentConfig {
    ExperimentId id = ExperimentId::TwoPhase;
    std::vector<std::uint64_t> seeds;
    // Grid values for the numeric experiments; empty means the default grid.
    std::vector<double> grid;
    DrawingArea area;
    force::ForceParams force;
    layered::LayeredParams layered;
    std::size_t n = 0;  // 0: default size for the experiment
    bool include_runtime = false;
};

struct ExperimentRow {
    std::string variant;
    std::uint64_t seed = 0;
    RunMetrics metrics;
};

struct ExperimentTable {
    std::vector<std::string> variants;  // in report order
    std::vector<ExperimentRow> rows;    // variant-major, seed-minor
    std::string text;
    std::string csv;
};

ExperimentTable run_table_experiment(const ExperimentConfig& config);

}  // namespace areagraph::bench
