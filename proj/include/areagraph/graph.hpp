#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace areagraph {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
    ParseError(std::size_t line, const std::string& what)
        : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Vertex {
    std::string id;
    double weight = 1.0;
    double width = 1.0;   // label box width (cm)
    double height = 1.0;  // label box height (cm)
    std::string label;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
    std::string src;
    std::string dst;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

// Vertex- and edge-weighted graph with label boxes. Insertion order is kept
// and defines the iteration order everywhere downstream.
class WeightedGraph {
public:
    explicit WeightedGraph(bool directed = false) : directed_(directed) {}

    bool directed() const { return directed_; }

    VertexIndex add_vertex(Vertex v);
    EdgeIndex add_edge(Edge e);
    void set_start(std::string id);
    void clear_start() { start_.reset(); }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(VertexIndex i) const { return vertices_[i]; }
    const Edge& edge(EdgeIndex i) const { return edges_[i]; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    std::optional<VertexIndex> index_of(std::string_view id) const;
    VertexIndex require_index(std::string_view id) const;
    bool has_vertex(std::string_view id) const { return index_of(id).has_value(); }

    // Endpoints of an edge as vertex indices.
    std::pair<VertexIndex, VertexIndex> ends(EdgeIndex e) const { return ends_[e]; }

    // Edge between the two vertices (orientation-sensitive when directed).
    std::optional<EdgeIndex> find_edge(std::string_view src, std::string_view dst) const;

    const std::optional<std::string>& start() const { return start_; }

    // Adds `amount` to an existing edge weight.
    void add_edge_weight(EdgeIndex e, double amount);

    double total_vertex_weight() const;
    double total_edge_weight() const;

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
        return a.directed_ == b.directed_ && a.vertices_ == b.vertices_ &&
               a.edges_ == b.edges_ && a.start_ == b.start_;
    }

private:
    std::pair<VertexIndex, VertexIndex> edge_key(VertexIndex s, VertexIndex t) const {
        if (!directed_ && t < s) return {t, s};
        return {s, t};
    }

    bool directed_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::pair<VertexIndex, VertexIndex>> ends_;
    std::unordered_map<std::string, VertexIndex> index_;
    std::map<std::pair<VertexIndex, VertexIndex>, EdgeIndex> edge_index_;
    std::optional<std::string> start_;
};

// Line-oriented text format:
//   # comment
//   graph directed|undirected
//   v <id> <weight> <width_cm> <height_cm> <label...>
//   e <src> <dst> <weight>
//   start <id>
WeightedGraph parse_graph(std::string_view text, bool require_start = false);
std::string serialize_graph(const WeightedGraph& g);

WeightedGraph read_graph_file(const std::string& path, bool require_start = false);
void write_graph_file(const WeightedGraph& g, const std::string& path);

// Vertices with a directed path from s (s included).
std::set<std::string> reachable_from(const WeightedGraph& g, std::string_view s);
std::vector<bool> reachable_mask(const WeightedGraph& g, VertexIndex s);

WeightedGraph induced_subgraph(const WeightedGraph& g, const std::set<std::string>& keep);

// Adjacency by vertex index: (neighbour, edge) pairs. For directed graphs
// `out` holds successors and `in` predecessors; undirected graphs fill both
// with all neighbours.
struct Adjacency {
    std::vector<std::vector<std::pair<VertexIndex, EdgeIndex>>> out;
    std::vector<std::vector<std::pair<VertexIndex, EdgeIndex>>> in;
};
Adjacency build_adjacency(const WeightedGraph& g);

}  // namespace areagraph
