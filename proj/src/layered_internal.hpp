#pragma once

#include <string>
#include <utility>
#include <vector>

#include "areagraph/layered_layout.hpp"

namespace areagraph::layered::detail {

// Per edge: (layer, position) of every item it passes, tail to head.
using Chains = std::vector<std::vector<std::pair<std::size_t, std::size_t>>>;

std::string fmt(double v);
Chains edge_chains(const LayerStructure& ls);
double separator(const LayerStructure& ls, std::size_t layer, std::size_t i, const LayeredParams& p,
                 const Chains* chains);
double item_height(const LayerStructure& ls, const LayerItem& it);
double layer_height_with(const LayerStructure& ls, std::size_t layer, const LayeredParams& p,
                         const Chains* chains);
void kill_edge(LayerStructure& ls, std::size_t e);
void compact_layers(LayerStructure& ls);
std::vector<char> reachable(const LayerStructure& ls);

}  // namespace areagraph::layered::detail
