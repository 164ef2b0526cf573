#include "areagraph/graph.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

namespace areagraph {

VertexIndex WeightedGraph::add_vertex(Vertex v) {
    if (v.id.empty()) throw GraphError("empty vertex id");
    if (!(v.weight > 0) || !std::isfinite(v.weight))
        throw GraphError("vertex " + v.id + ": weight must be positive");
    if (!(v.width > 0) || !(v.height > 0) || !std::isfinite(v.width) ||
        !std::isfinite(v.height))
        throw GraphError("vertex " + v.id + ": dimensions must be positive");
    if (index_.count(v.id)) throw GraphError("duplicate vertex id " + v.id);
    VertexIndex i = vertices_.size();
    index_.emplace(v.id, i);
    vertices_.push_back(std::move(v));
    return i;
}

EdgeIndex WeightedGraph::add_edge(Edge e) {
    auto s = index_of(e.src);
    auto t = index_of(e.dst);
    if (!s) throw GraphError("edge endpoint " + e.src + " does not exist");
    if (!t) throw GraphError("edge endpoint " + e.dst + " does not exist");
    if (*s == *t) throw GraphError("self-loop on " + e.src);
    if (!(e.weight > 0) || !std::isfinite(e.weight))
        throw GraphError("edge " + e.src + "-" + e.dst + ": weight must be positive");
    auto key = edge_key(*s, *t);
    if (edge_index_.count(key))
        throw GraphError("duplicate edge " + e.src + "-" + e.dst);
    EdgeIndex i = edges_.size();
    edge_index_.emplace(key, i);
    ends_.emplace_back(*s, *t);
    edges_.push_back(std::move(e));
    return i;
}

void WeightedGraph::set_start(std::string id) {
    if (!has_vertex(id)) throw GraphError("start vertex " + id + " does not exist");
    start_ = std::move(id);
}

std::optional<VertexIndex> WeightedGraph::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VertexIndex WeightedGraph::require_index(std::string_view id) const {
    auto i = index_of(id);
    if (!i) throw GraphError("unknown vertex " + std::string(id));
    return *i;
}

std::optional<EdgeIndex> WeightedGraph::find_edge(std::string_view src,
                                                  std::string_view dst) const {
    auto s = index_of(src);
    auto t = index_of(dst);
    if (!s || !t) return std::nullopt;
    auto it = edge_index_.find(edge_key(*s, *t));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

void WeightedGraph::add_edge_weight(EdgeIndex e, double amount) {
    edges_.at(e).weight += amount;
}

double WeightedGraph::total_vertex_weight() const {
    double s = 0;
    for (const auto& v : vertices_) s += v.weight;
    return s;
}

double WeightedGraph::total_edge_weight() const {
    double s = 0;
    for (const auto& e : edges_) s += e.weight;
    return s;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line, std::size_t max_fields,
                                       std::string_view* rest) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && is_ws(line[i])) ++i;
        if (i >= line.size()) break;
        if (out.size() == max_fields) {
            if (rest) *rest = line.substr(i);
            return out;
        }
        std::size_t j = i;
        while (j < line.size() && !is_ws(line[j])) ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    if (rest) *rest = {};
    return out;
}

double parse_number(std::string_view tok, std::size_t line, const char* what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError(line, std::string("malformed ") + what + " '" + std::string(tok) + "'");
    if (!(v > 0)) throw ParseError(line, std::string(what) + " must be positive");
    return v;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string_view trim_right(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

WeightedGraph parse_graph(std::string_view text, bool require_start) {
    std::optional<WeightedGraph> g;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        std::string_view label;
        auto f = split_ws(line, 5, &label);
        if (f.empty() || f[0].front() == '#') continue;

        try {
            if (!g) {
                if (f[0] != "graph" || f.size() != 2)
                    throw ParseError(line_no, "expected 'graph directed' or 'graph undirected'");
                if (f[1] == "directed")
                    g.emplace(true);
                else if (f[1] == "undirected")
                    g.emplace(false);
                else
                    throw ParseError(line_no, "unknown graph kind '" + std::string(f[1]) + "'");
                continue;
            }
            if (f[0] == "v") {
                if (f.size() < 5) throw ParseError(line_no, "vertex line needs id weight width height");
                Vertex v;
                v.id = std::string(f[1]);
                v.weight = parse_number(f[2], line_no, "weight");
                v.width = parse_number(f[3], line_no, "width");
                v.height = parse_number(f[4], line_no, "height");
                v.label = std::string(trim_right(label));
                g->add_vertex(std::move(v));
            } else if (f[0] == "e") {
                if (f.size() != 4 || !label.empty())
                    throw ParseError(line_no, "edge line must be 'e <src> <dst> <weight>'");
                g->add_edge({std::string(f[1]), std::string(f[2]),
                             parse_number(f[3], line_no, "weight")});
            } else if (f[0] == "start") {
                if (f.size() != 2) throw ParseError(line_no, "start line must be 'start <id>'");
                if (g->start()) throw ParseError(line_no, "duplicate start line");
                g->set_start(std::string(f[1]));
            } else {
                throw ParseError(line_no, "unknown record '" + std::string(f[0]) + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const GraphError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!g) throw ParseError(line_no, "missing 'graph' header");
    if (require_start && !g->start()) throw GraphError("graph has no start vertex");
    return std::move(*g);
}

std::string serialize_graph(const WeightedGraph& g) {
    std::ostringstream os;
    os << "graph " << (g.directed() ? "directed" : "undirected") << '\n';
    for (const auto& v : g.vertices()) {
        os << "v " << v.id << ' ' << format_number(v.weight) << ' ' << format_number(v.width)
           << ' ' << format_number(v.height);
        if (!v.label.empty()) os << ' ' << v.label;
        os << '\n';
    }
    for (const auto& e : g.edges())
        os << "e " << e.src << ' ' << e.dst << ' ' << format_number(e.weight) << '\n';
    if (g.start()) os << "start " << *g.start() << '\n';
    return os.str();
}

WeightedGraph read_graph_file(const std::string& path, bool require_start) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GraphError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str(), require_start);
}

void write_graph_file(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GraphError("cannot write " + path);
    out << serialize_graph(g);
}

Adjacency build_adjacency(const WeightedGraph& g) {
    Adjacency adj;
    adj.out.resize(g.vertex_count());
    adj.in.resize(g.vertex_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        auto [s, t] = g.ends(e);
        adj.out[s].emplace_back(t, e);
        adj.in[t].emplace_back(s, e);
        if (!g.directed()) {
            adj.out[t].emplace_back(s, e);
            adj.in[s].emplace_back(t, e);
        }
    }
    return adj;
}

std::vector<bool> reachable_mask(const WeightedGraph& g, VertexIndex s) {
    auto adj = build_adjacency(g);
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexIndex> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
        VertexIndex u = queue.front();
        queue.pop_front();
        for (auto [w, e] : adj.out[u]) {
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

std::set<std::string> reachable_from(const WeightedGraph& g, std::string_view s) {
    auto mask = reachable_mask(g, g.require_index(s));
    std::set<std::string> out;
    for (VertexIndex i = 0; i < mask.size(); ++i)
        if (mask[i]) out.insert(g.vertex(i).id);
    return out;
}

WeightedGraph induced_subgraph(const WeightedGraph& g, const std::set<std::string>& keep) {
    WeightedGraph out(g.directed());
    for (const auto& v : g.vertices())
        if (keep.count(v.id)) out.add_vertex(v);
    for (const auto& e : g.edges())
        if (keep.count(e.src) && keep.count(e.dst)) out.add_edge(e);
    if (g.start() && keep.count(*g.start())) out.set_start(*g.start());
    return out;
}

}  // namespace areagraph
