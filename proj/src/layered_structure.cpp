#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "areagraph/layered_layout.hpp"
#include "layered_internal.hpp"

namespace areagraph::layered {

LayerStructure LayerStructure::build(const WeightedGraph& g, const std::vector<EdgeIndex>& reverted,
                                     const std::vector<int>& layer) {
    LayerStructure ls;
    ls.vertices = g.vertices();
    if (g.start()) ls.start = g.require_index(*g.start());
    const std::size_t n = g.vertex_count();
    ls.present.assign(n, 1);
    ls.layer_of = layer;
    std::vector<char> rev(g.edge_count(), 0);
    for (EdgeIndex e : reverted) rev.at(e) = 1;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.ends(e);
        ls.edges.push_back({u, v, g.edge(e).weight, bool(rev[e]), false, true});
        const auto& le = ls.edges.back();
        if (layer[le.tail()] >= layer[le.head()])
            throw std::logic_error("layering does not point every edge to the right");
    }
    int count = 0;
    for (int l : layer) count = std::max(count, l + 1);
    ls.layers.resize(std::size_t(count));
    for (VertexIndex v = 0; v < n; ++v) ls.layers[std::size_t(layer[v])].push_back({false, v});
    return ls;
}

bool LayerStructure::is_present(const std::string& id) const {
    auto i = index_of(id);
    return i && present[*i];
}

std::optional<VertexIndex> LayerStructure::index_of(const std::string& id) const {
    for (VertexIndex v = 0; v < vertices.size(); ++v)
        if (vertices[v].id == id) return v;
    return std::nullopt;
}

std::vector<std::string> LayerStructure::layer_ids(std::size_t layer) const {
    std::vector<std::string> out;
    for (const auto& it : layers.at(layer)) {
        if (it.dummy)
            out.push_back("~" + vertices[edges[it.index].src].id + "-" +
                          vertices[edges[it.index].dst].id);
        else
            out.push_back(vertices[it.index].id);
    }
    return out;
}

std::size_t LayerStructure::real_count() const {
    return std::size_t(std::count(present.begin(), present.end(), 1));
}

bool LayerStructure::has_dummies() const {
    for (const auto& l : layers)
        for (const auto& it : l)
            if (it.dummy) return true;
    return false;
}

double vertex_importance(const Vertex& v) { return v.weight / v.height; }

bool less_important(const Vertex& a, const Vertex& b) {
    double ia = vertex_importance(a), ib = vertex_importance(b);
    if (ia != ib) return ia < ib;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.id < b.id;
}

namespace detail {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Chains edge_chains(const LayerStructure& ls) {
    // Position of every dummy, keyed by (edge, layer).
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> dummy_pos;
    std::vector<std::size_t> vpos(ls.vertices.size(), 0);
    for (std::size_t l = 0; l < ls.layers.size(); ++l)
        for (std::size_t i = 0; i < ls.layers[l].size(); ++i) {
            const auto& it = ls.layers[l][i];
            if (it.dummy)
                dummy_pos[{it.index, l}] = i;
            else
                vpos[it.index] = i;
        }
    Chains chains(ls.edges.size());
    for (std::size_t e = 0; e < ls.edges.size(); ++e) {
        const auto& le = ls.edges[e];
        if (!le.alive) continue;
        std::size_t lt = std::size_t(ls.layer_of[le.tail()]);
        std::size_t lh = std::size_t(ls.layer_of[le.head()]);
        auto& c = chains[e];
        c.emplace_back(lt, vpos[le.tail()]);
        for (std::size_t l = lt + 1; l < lh; ++l) {
            auto it = dummy_pos.find({e, l});
            if (it == dummy_pos.end())
                throw std::logic_error("edge spans several layers without dummy vertices");
            c.emplace_back(l, it->second);
        }
        c.emplace_back(lh, vpos[le.head()]);
    }
    return chains;
}

double separator(const LayerStructure& ls, std::size_t layer, std::size_t i, const LayeredParams& p,
                 const Chains* chains) {
    const auto& a = ls.layers[layer][i];
    const auto& b = ls.layers[layer][i + 1];
    if (!a.dummy && !b.dummy) return p.gap_vv;
    if (a.dummy != b.dummy) return p.gap_ee;
    // Two dummies run in parallel when both continue as dummies that are
    // still neighbours in the next layer.
    if (chains && layer + 1 < ls.layers.size()) {
        const auto& ca = (*chains)[a.index];
        const auto& cb = (*chains)[b.index];
        auto next = [&](const auto& c) -> std::optional<std::size_t> {
            for (std::size_t k = 0; k + 1 < c.size(); ++k)
                if (c[k].first == layer) return c[k + 1].second;
            return std::nullopt;
        };
        auto na = next(ca), nb = next(cb);
        if (na && nb) {
            const auto& nl = ls.layers[layer + 1];
            bool both_dummies = nl[*na].dummy && nl[*nb].dummy;
            std::size_t d = *na > *nb ? *na - *nb : *nb - *na;
            if (both_dummies && d == 1) return p.gap_parallel;
        }
    }
    return p.gap_ee;
}

double item_height(const LayerStructure& ls, const LayerItem& it) {
    return it.dummy ? 0.0 : ls.vertices[it.index].height;
}

double layer_height_with(const LayerStructure& ls, std::size_t layer, const LayeredParams& p,
                         const Chains* chains) {
    const auto& items = ls.layers[layer];
    double h = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        h += item_height(ls, items[i]);
        if (i + 1 < items.size()) h += separator(ls, layer, i, p, chains);
    }
    return h;
}

void erase_item(LayerStructure& ls, const LayerItem& item) {
    for (auto& l : ls.layers) {
        auto it = std::find(l.begin(), l.end(), item);
        if (it != l.end()) {
            l.erase(it);
            return;
        }
    }
}

void kill_edge(LayerStructure& ls, std::size_t e) {
    if (!ls.edges[e].alive) return;
    ls.edges[e].alive = false;
    for (auto& l : ls.layers)
        l.erase(std::remove_if(l.begin(), l.end(),
                               [&](const LayerItem& it) { return it.dummy && it.index == e; }),
                l.end());
}

void compact_layers(LayerStructure& ls) {
    std::vector<std::vector<LayerItem>> kept;
    for (auto& l : ls.layers)
        if (!l.empty()) kept.push_back(std::move(l));
    ls.layers = std::move(kept);
    for (std::size_t l = 0; l < ls.layers.size(); ++l)
        for (const auto& it : ls.layers[l])
            if (!it.dummy) ls.layer_of[it.index] = int(l);
}

std::vector<char> reachable(const LayerStructure& ls) {
    const std::size_t n = ls.vertices.size();
    if (!ls.start) return ls.present;  // nothing to be reachable from
    std::vector<char> seen(n, 0);
    if (!ls.present[*ls.start]) return seen;
    std::vector<std::vector<VertexIndex>> out(n);
    for (const auto& e : ls.edges)
        if (e.alive && ls.present[e.src] && ls.present[e.dst]) out[e.src].push_back(e.dst);
    std::vector<VertexIndex> stack{*ls.start};
    seen[*ls.start] = 1;
    while (!stack.empty()) {
        VertexIndex v = stack.back();
        stack.pop_back();
        for (VertexIndex w : out[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

}  // namespace detail

using namespace detail;

void strip_dummies(LayerStructure& ls) {
    for (auto& l : ls.layers)
        l.erase(std::remove_if(l.begin(), l.end(), [](const LayerItem& it) { return it.dummy; }),
                l.end());
}

void insert_dummies(LayerStructure& ls) {
    // Drop stale dummies, keeping the order of the ones still needed.
    for (std::size_t l = 0; l < ls.layers.size(); ++l) {
        auto& items = ls.layers[l];
        items.erase(std::remove_if(items.begin(), items.end(),
                                   [&](const LayerItem& it) {
                                       if (!it.dummy) return false;
                                       const auto& e = ls.edges[it.index];
                                       if (!e.alive) return true;
                                       int lt = ls.layer_of[e.tail()], lh = ls.layer_of[e.head()];
                                       return !(int(l) > lt && int(l) < lh);
                                   }),
                    items.end());
    }
    compact_layers(ls);
    std::vector<std::vector<char>> has(ls.edges.size());
    for (std::size_t l = 0; l < ls.layers.size(); ++l)
        for (const auto& it : ls.layers[l])
            if (it.dummy) {
                auto& h = has[it.index];
                if (h.size() < ls.layers.size()) h.resize(ls.layers.size(), 0);
                h[l] = 1;
            }
    for (std::size_t e = 0; e < ls.edges.size(); ++e) {
        const auto& le = ls.edges[e];
        if (!le.alive) continue;
        int lt = ls.layer_of[le.tail()], lh = ls.layer_of[le.head()];
        for (int l = lt + 1; l < lh; ++l) {
            if (!has[e].empty() && has[e][std::size_t(l)]) continue;
            ls.layers[std::size_t(l)].push_back({true, e});
        }
    }
}

double layer_height(const LayerStructure& ls, std::size_t layer, const LayeredParams& p) {
    if (!ls.has_dummies()) return layer_height_with(ls, layer, p, nullptr);
    auto chains = edge_chains(ls);
    return layer_height_with(ls, layer, p, &chains);
}

double layer_width(const LayerStructure& ls, std::size_t layer) {
    double w = 0;
    for (const auto& it : ls.layers.at(layer))
        if (!it.dummy) w = std::max(w, ls.vertices[it.index].width);
    return w;
}

double total_width(const LayerStructure& ls, const LayeredParams& p) {
    double w = 0;
    for (std::size_t l = 0; l < ls.layers.size(); ++l) w += layer_width(ls, l);
    if (ls.layers.size() > 1) w += double(ls.layers.size() - 1) * p.layer_gap;
    return w;
}

bool remove_vertex(LayerStructure& ls, VertexIndex v, RunLog* log, const std::string& reason) {
    if (ls.start && *ls.start == v) return false;
    if (!ls.present[v]) return false;
    const bool dummies = ls.has_dummies();
    std::vector<std::size_t> in, out;
    for (std::size_t e = 0; e < ls.edges.size(); ++e) {
        const auto& le = ls.edges[e];
        if (!le.alive) continue;
        if (le.dst == v) in.push_back(e);
        if (le.src == v) out.push_back(e);
    }
    // Weight transfer in input orientation: u -> v -> w feeds u -> w.
    for (std::size_t ei : in)
        for (std::size_t eo : out) {
            VertexIndex u = ls.edges[ei].src, w = ls.edges[eo].dst;
            if (u == w || !ls.present[u] || !ls.present[w]) continue;
            double amount = std::min(ls.edges[ei].weight, ls.edges[eo].weight);
            auto found = std::find_if(ls.edges.begin(), ls.edges.end(), [&](const LayerEdge& e) {
                return e.alive && e.src == u && e.dst == w;
            });
            if (found != ls.edges.end()) {
                found->weight += amount;
                continue;
            }
            int lu = ls.layer_of[u], lw = ls.layer_of[w];
            if (lu == lw) continue;  // cannot be drawn between layers
            ls.edges.push_back({u, w, amount, lu > lw, true, true});
        }
    for (std::size_t e : in) kill_edge(ls, e);
    for (std::size_t e : out) kill_edge(ls, e);
    erase_item(ls, {false, v});
    ls.present[v] = 0;
    ls.layer_of[v] = -1;
    if (dummies) insert_dummies(ls);
    if (log)
        log->push_back("remove-vertex " + ls.vertices[v].id + " (" + reason +
                       ", i(v)=" + fmt(vertex_importance(ls.vertices[v])) + ")");
    return true;
}

std::vector<VertexIndex> cascade_unreachable(LayerStructure& ls, RunLog* log) {
    std::vector<VertexIndex> removed;
    while (true) {
        auto seen = reachable(ls);
        std::optional<VertexIndex> victim;
        for (const auto& layer : ls.layers) {
            for (const auto& it : layer)
                if (!it.dummy && !seen[it.index]) {
                    victim = it.index;
                    break;
                }
            if (victim) break;
        }
        if (!victim) break;
        remove_vertex(ls, *victim, log, "unreachable");
        removed.push_back(*victim);
    }
    return removed;
}

bool all_reachable(const LayerStructure& ls) {
    auto seen = reachable(ls);
    for (VertexIndex v = 0; v < ls.vertices.size(); ++v)
        if (ls.present[v] && !seen[v]) return false;
    return true;
}

std::vector<VertexIndex> remove_vertices_for_height(LayerStructure& ls, double area_height,
                                                    const LayeredParams& p, RunLog* log) {
    if (ls.start && ls.vertices[*ls.start].height > area_height)
        throw LayeredError("start vertex " + ls.vertices[*ls.start].id +
                           " is taller than the drawing area");
    std::vector<VertexIndex> removed;
    for (std::size_t l = 0; l < ls.layers.size(); ++l) {
        while (layer_height(ls, l, p) > area_height) {
            std::optional<VertexIndex> victim;
            for (const auto& it : ls.layers[l]) {
                if (it.dummy || (ls.start && it.index == *ls.start)) continue;
                if (!victim || less_important(ls.vertices[it.index], ls.vertices[*victim]))
                    victim = it.index;
            }
            if (!victim) break;
            remove_vertex(ls, *victim, log, "height, layer " + std::to_string(l));
            removed.push_back(*victim);
        }
        auto more = cascade_unreachable(ls, log);
        removed.insert(removed.end(), more.begin(), more.end());
    }
    insert_dummies(ls);  // drops emptied layers
    strip_dummies(ls);
    return removed;
}

double layer_importance(const LayerStructure& ls, std::size_t layer) {
    double w = layer_width(ls, layer);
    if (w <= 0) return 0.0;
    double sum = 0;
    for (const auto& it : ls.layers.at(layer))
        if (!it.dummy) sum += ls.vertices[it.index].weight;
    return sum / w;
}

std::vector<VertexIndex> remove_layers_for_width(LayerStructure& ls, double area_width,
                                                 const LayeredParams& p, RunLog* log) {
    std::vector<VertexIndex> removed;
    const bool dummies = ls.has_dummies();
    compact_layers(ls);
    if (ls.start) {
        double w = layer_width(ls, std::size_t(ls.layer_of[*ls.start]));
        if (w > area_width)
            throw LayeredError("layer of the start vertex is wider than the drawing area");
    }
    while (total_width(ls, p) > area_width) {
        int start_layer = ls.start ? ls.layer_of[*ls.start] : -1;
        std::optional<std::size_t> pick;
        double best = 0;
        for (std::size_t l = 0; l < ls.layers.size(); ++l) {
            if (int(l) == start_layer) continue;
            double imp = layer_importance(ls, l);
            if (!pick || imp < best) {
                pick = l;
                best = imp;
            }
        }
        if (!pick) throw LayeredError("only the start layer is left and it does not fit");
        std::vector<VertexIndex> victims;
        for (const auto& it : ls.layers[*pick])
            if (!it.dummy) victims.push_back(it.index);
        std::sort(victims.begin(), victims.end());
        if (log)
            log->push_back("remove-layer " + std::to_string(*pick) + " (width, i(L)=" + fmt(best) +
                           ", " + std::to_string(victims.size()) + " vertices)");
        for (VertexIndex v : victims) {
            remove_vertex(ls, v, log, "width, layer " + std::to_string(*pick));
            removed.push_back(v);
        }
        auto more = cascade_unreachable(ls, log);
        removed.insert(removed.end(), more.begin(), more.end());
        if (dummies)
            insert_dummies(ls);
        else
            compact_layers(ls);
    }
    return removed;
}

CrossingTotals count_layer_crossings(const LayerStructure& ls, CrossingWeight convention) {
    auto chains = edge_chains(ls);
    struct Seg {
        std::size_t p, q, e;
    };
    std::vector<std::vector<Seg>> gaps(ls.layers.empty() ? 0 : ls.layers.size() - 1);
    for (std::size_t e = 0; e < chains.size(); ++e)
        for (std::size_t k = 0; k + 1 < chains[e].size(); ++k)
            gaps[chains[e][k].first].push_back({chains[e][k].second, chains[e][k + 1].second, e});
    CrossingTotals t;
    for (const auto& segs : gaps)
        for (std::size_t i = 0; i < segs.size(); ++i)
            for (std::size_t j = i + 1; j < segs.size(); ++j) {
                const Seg& a = segs[i];
                const Seg& b = segs[j];
                bool cross = (a.p < b.p && a.q > b.q) || (a.p > b.p && a.q < b.q);
                if (!cross) continue;
                ++t.count;
                t.weight += crossing_weight(ls.edges[a.e].weight, ls.edges[b.e].weight, convention);
            }
    return t;
}

double edge_importance(const LayerStructure& ls, std::size_t edge) {
    auto chains = edge_chains(ls);
    const auto& ce = chains.at(edge);
    std::vector<char> crosses(ls.edges.size(), 0);
    for (std::size_t f = 0; f < chains.size(); ++f) {
        if (f == edge || chains[f].empty()) continue;
        const auto& cf = chains[f];
        for (std::size_t i = 0; i + 1 < ce.size() && !crosses[f]; ++i)
            for (std::size_t j = 0; j + 1 < cf.size(); ++j) {
                if (ce[i].first != cf[j].first) continue;
                std::size_t ap = ce[i].second, aq = ce[i + 1].second;
                std::size_t bp = cf[j].second, bq = cf[j + 1].second;
                if ((ap < bp && aq > bq) || (ap > bp && aq < bq)) crosses[f] = 1;
            }
    }
    double sum = 0;
    for (std::size_t f = 0; f < crosses.size(); ++f)
        if (crosses[f]) sum += ls.edges[f].weight;
    if (sum == 0) return INFINITY;
    return ls.edges[edge].weight / sum;
}

std::vector<std::size_t> remove_edges_to_budget(LayerStructure& ls, double budget, RunLog* log) {
    std::vector<std::size_t> removed;
    while (double(count_layer_crossings(ls).count) > budget) {
        std::optional<std::size_t> pick;
        double best = INFINITY;
        for (std::size_t e = 0; e < ls.edges.size(); ++e) {
            if (!ls.edges[e].alive) continue;
            double imp = edge_importance(ls, e);
            if (!std::isfinite(imp)) continue;
            bool better = !pick || imp < best;
            if (!better && imp == best) {
                const auto& a = ls.edges[e];
                const auto& b = ls.edges[*pick];
                if (a.weight != b.weight)
                    better = a.weight < b.weight;
                else
                    better = std::tie(ls.vertices[a.src].id, ls.vertices[a.dst].id) <
                             std::tie(ls.vertices[b.src].id, ls.vertices[b.dst].id);
            }
            if (better) {
                pick = e;
                best = imp;
            }
        }
        if (!pick) break;
        const auto& le = ls.edges[*pick];
        if (log)
            log->push_back("remove-edge " + ls.vertices[le.src].id + "-" + ls.vertices[le.dst].id +
                           " (crossings, i(e)=" + fmt(best) + ")");
        kill_edge(ls, *pick);
        removed.push_back(*pick);
        cascade_unreachable(ls, log);
        insert_dummies(ls);
    }
    return removed;
}

std::vector<VertexIndex> apply_gaps_and_repair(LayerStructure& ls, double area_height,
                                               const LayeredParams& p, RunLog* log) {
    std::vector<VertexIndex> removed;
    insert_dummies(ls);
    while (true) {
        auto chains = edge_chains(ls);
        std::optional<std::size_t> over;
        for (std::size_t l = 0; l < ls.layers.size(); ++l)
            if (layer_height_with(ls, l, p, &chains) > area_height) {
                over = l;
                break;
            }
        if (!over) break;
        std::optional<VertexIndex> victim;
        for (const auto& it : ls.layers[*over]) {
            if (it.dummy || (ls.start && it.index == *ls.start)) continue;
            if (!victim || less_important(ls.vertices[it.index], ls.vertices[*victim]))
                victim = it.index;
        }
        if (victim) {
            remove_vertex(ls, *victim, log, "gaps, layer " + std::to_string(*over));
            removed.push_back(*victim);
        } else {
            // Only edges pass through here: drop the lightest one.
            std::optional<std::size_t> pick;
            for (const auto& it : ls.layers[*over])
                if (it.dummy && (!pick || ls.edges[it.index].weight < ls.edges[*pick].weight))
                    pick = it.index;
            if (!pick) throw LayeredError("layer " + std::to_string(*over) + " cannot be repaired");
            const auto& le = ls.edges[*pick];
            if (log)
                log->push_back("remove-edge " + ls.vertices[le.src].id + "-" +
                               ls.vertices[le.dst].id + " (gaps, layer " +
                               std::to_string(*over) + ")");
            kill_edge(ls, *pick);
        }
        auto more = cascade_unreachable(ls, log);
        removed.insert(removed.end(), more.begin(), more.end());
        insert_dummies(ls);
    }
    return removed;
}

}  // namespace areagraph::layered
