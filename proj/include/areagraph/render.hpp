#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "areagraph/geometry.hpp"
#include "areagraph/graph.hpp"
#include "areagraph/layout.hpp"

namespace areagraph {

class RenderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RenderStyle {
    // When set, every edge must carry this geometry style.
    std::optional<EdgeStyle> edge_style;
    bool show_frame = true;
    double font_size_pt = 10.0;
    double scale = 37.7953;  // user units per cm
    double margin = 5.0;     // user units around the area
    double arrow_length = 0.25;  // cm
};

// Deterministic SVG 1.1 document. Vertices are drawn on top of edges, heavier
// items on top of lighter ones. Throws RenderError when a vertex of `g` has
// no position or an edge has no geometry.
std::string render_svg(const Layout& layout, const WeightedGraph& g, const DrawingArea& area,
                       const RenderStyle& style = {});

// Fill colour of the vertex with the given ascending weight rank out of n:
// green for the lightest, red for the heaviest.
std::string rank_color(std::size_t rank, std::size_t n);

std::string xml_escape(std::string_view s);

}  // namespace areagraph
