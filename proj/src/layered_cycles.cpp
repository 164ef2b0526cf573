#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "areagraph/layered_layout.hpp"

namespace areagraph::layered {

void LayeredParams::validate() const {
    if (!(gap_parallel >= 0 && gap_parallel <= gap_ee && gap_ee <= gap_vv))
        throw std::invalid_argument("need 0 <= gap_parallel <= gap_ee <= gap_vv");
    if (!(layer_gap > 0)) throw std::invalid_argument("layer_gap must be positive");
    if (!(crossing_budget >= 0)) throw std::invalid_argument("crossing_budget must be >= 0");
    if (!(stroke_coeff > 0 && stroke_min > 0 && stroke_min <= stroke_max))
        throw std::invalid_argument("invalid stroke width settings");
    if (!(threshold >= 0)) throw std::invalid_argument("threshold must be >= 0");
    if (crossing_rounds < 0 || coordinate_sweeps < 0 || relax_iterations < 0)
        throw std::invalid_argument("iteration counts must be >= 0");
}

std::vector<std::pair<VertexIndex, VertexIndex>> oriented_arcs(
    const WeightedGraph& g, const std::vector<EdgeIndex>& reverted) {
    std::vector<char> rev(g.edge_count(), 0);
    for (EdgeIndex e : reverted) rev.at(e) = 1;
    std::vector<std::pair<VertexIndex, VertexIndex>> arcs;
    arcs.reserve(g.edge_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.ends(e);
        arcs.emplace_back(rev[e] ? v : u, rev[e] ? u : v);
    }
    return arcs;
}

namespace {

// Kahn order; shorter than n when the arcs contain a cycle.
std::vector<VertexIndex> topological_order(
    std::size_t n, const std::vector<std::pair<VertexIndex, VertexIndex>>& arcs) {
    std::vector<std::vector<VertexIndex>> out(n);
    std::vector<std::size_t> indeg(n, 0);
    for (auto [u, v] : arcs) {
        out[u].push_back(v);
        ++indeg[v];
    }
    std::vector<VertexIndex> order, stack;
    for (VertexIndex v = n; v-- > 0;)
        if (indeg[v] == 0) stack.push_back(v);
    while (!stack.empty()) {
        VertexIndex v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (VertexIndex w : out[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    return order;
}

// Tarjan, iterative. Returns component id per vertex.
std::vector<int> strongly_connected(std::size_t n,
                                    const std::vector<std::vector<VertexIndex>>& out,
                                    int* count) {
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<VertexIndex> stack;
    int next = 0, comps = 0;
    struct Frame {
        VertexIndex v;
        std::size_t child;
    };
    for (VertexIndex root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < out[f.v].size()) {
                VertexIndex w = out[f.v][f.child++];
                if (index[w] < 0) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            VertexIndex v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                while (true) {
                    VertexIndex w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comps;
                    if (w == v) break;
                }
                ++comps;
            }
        }
    }
    *count = comps;
    return comp;
}

std::vector<EdgeIndex> heuristic_reversal(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    auto heavier = [&](VertexIndex a, VertexIndex b) {
        const Vertex& va = g.vertex(a);
        const Vertex& vb = g.vertex(b);
        if (va.weight != vb.weight) return va.weight > vb.weight;
        return va.id < vb.id;
    };
    std::vector<std::vector<std::pair<VertexIndex, EdgeIndex>>> out(n);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.ends(e);
        out[u].emplace_back(v, e);
    }
    for (auto& list : out)
        std::sort(list.begin(), list.end(),
                  [&](const auto& a, const auto& b) { return heavier(a.first, b.first); });

    std::vector<VertexIndex> roots(n);
    std::iota(roots.begin(), roots.end(), 0);
    std::sort(roots.begin(), roots.end(), heavier);
    if (g.start()) {
        VertexIndex s = g.require_index(*g.start());
        roots.erase(std::find(roots.begin(), roots.end(), s));
        roots.insert(roots.begin(), s);
    }

    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<EdgeIndex> reverted;
    for (VertexIndex r : roots) {
        if (state[r]) continue;
        std::vector<std::pair<VertexIndex, std::size_t>> call{{r, 0}};
        state[r] = 1;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < out[v].size()) {
                auto [w, e] = out[v][i++];
                if (state[w] == 1)
                    reverted.push_back(e);
                else if (state[w] == 0) {
                    state[w] = 1;
                    call.emplace_back(w, 0);
                }
                continue;
            }
            state[v] = 2;
            call.pop_back();
        }
    }
    std::sort(reverted.begin(), reverted.end());
    return reverted;
}

}  // namespace

bool is_acyclic(std::size_t n, const std::vector<std::pair<VertexIndex, VertexIndex>>& arcs) {
    return topological_order(n, arcs).size() == n;
}

CycleBreakResult break_cycles(const WeightedGraph& g, CycleMode mode, CycleObjective objective,
                              std::size_t node_budget) {
    if (!g.directed()) throw std::invalid_argument("cycle breaking needs a directed graph");
    const std::size_t n = g.vertex_count();
    auto cost = [&](EdgeIndex e) {
        return objective == CycleObjective::Count ? 1.0 : g.edge(e).weight;
    };
    CycleBreakResult result;
    auto finish = [&](std::vector<EdgeIndex> rev, bool exact) {
        result.reverted = std::move(rev);
        result.exact = exact;
        result.reverted_weight = 0;
        for (EdgeIndex e : result.reverted) result.reverted_weight += cost(e);
        return result;
    };
    if (mode == CycleMode::Heuristic) return finish(heuristic_reversal(g), false);

    std::vector<std::vector<VertexIndex>> out(n);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) out[g.ends(e).first].push_back(g.ends(e).second);
    int comps = 0;
    std::vector<int> comp = strongly_connected(n, out, &comps);
    std::vector<std::vector<VertexIndex>> members(static_cast<std::size_t>(comps));
    for (VertexIndex v = 0; v < n; ++v) members[std::size_t(comp[v])].push_back(v);

    std::vector<EdgeIndex> reverted;
    for (const auto& mem : members) {
        if (mem.size() < 2) continue;
        const std::size_t k = mem.size();
        if (k >= 63 || (std::size_t(1) << k) > node_budget) {
            std::ostringstream os;
            os << "exact cycle breaking: component of " << k
               << " vertices exceeds the search budget; using the heuristic";
            result.log.push_back(os.str());
            return finish(heuristic_reversal(g), false);
        }
        std::vector<int> local(n, -1);
        for (std::size_t i = 0; i < k; ++i) local[mem[i]] = int(i);
        // Arcs inside the component: (local tail, local head, cost, edge).
        struct Arc {
            int u, v;
            double c;
            EdgeIndex e;
        };
        std::vector<std::vector<Arc>> arcs_from(k);
        for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.ends(e);
            if (comp[u] == comp[v] && local[u] >= 0)
                arcs_from[std::size_t(local[u])].push_back({local[u], local[v], cost(e), e});
        }
        // f[S]: cheapest ordering of S placed first; placing v after S turns
        // every arc v -> S into a backward arc.
        const std::size_t full = (std::size_t(1) << k) - 1;
        std::vector<double> f(full + 1, INFINITY);
        std::vector<signed char> last(full + 1, -1);
        f[0] = 0;
        for (std::size_t S = 0; S < full; ++S) {
            if (!std::isfinite(f[S])) continue;
            for (std::size_t v = 0; v < k; ++v) {
                if (S >> v & 1) continue;
                double add = 0;
                for (const Arc& a : arcs_from[v])
                    if (S >> a.v & 1) add += a.c;
                std::size_t T = S | (std::size_t(1) << v);
                if (f[S] + add < f[T]) {
                    f[T] = f[S] + add;
                    last[T] = static_cast<signed char>(v);
                }
            }
        }
        std::vector<int> pos(k, 0);
        std::size_t S = full;
        for (int p = int(k) - 1; p >= 0; --p) {
            int v = last[S];
            pos[std::size_t(v)] = p;
            S &= ~(std::size_t(1) << v);
        }
        for (const auto& list : arcs_from)
            for (const Arc& a : list)
                if (pos[std::size_t(a.u)] > pos[std::size_t(a.v)]) reverted.push_back(a.e);
    }
    std::sort(reverted.begin(), reverted.end());
    return finish(std::move(reverted), true);
}

std::size_t longest_path_length(std::size_t n,
                                const std::vector<std::pair<VertexIndex, VertexIndex>>& arcs) {
    auto order = topological_order(n, arcs);
    if (order.size() != n) throw std::invalid_argument("longest path needs an acyclic graph");
    std::vector<std::vector<VertexIndex>> out(n);
    for (auto [u, v] : arcs) out[u].push_back(v);
    std::vector<std::size_t> len(n, 1);
    std::size_t best = 0;
    for (VertexIndex v : order) {
        best = std::max(best, len[v]);
        for (VertexIndex w : out[v]) len[w] = std::max(len[w], len[v] + 1);
    }
    return best;
}

std::size_t longest_path_length(const WeightedGraph& dag) {
    return longest_path_length(dag.vertex_count(), oriented_arcs(dag, {}));
}

namespace {

std::vector<int> coffman_graham(std::size_t n,
                                const std::vector<std::vector<VertexIndex>>& succ,
                                const std::vector<std::vector<VertexIndex>>& pred,
                                std::size_t n_max, const std::vector<std::string>& ids) {
    auto id_less = [&](VertexIndex a, VertexIndex b) {
        return ids.empty() ? a < b : ids[a] < ids[b];
    };
    // Labels from the sink side: a vertex is labelled once all successors are,
    // choosing the lexicographically smallest decreasing successor-label list.
    std::vector<int> label(n, 0);
    for (int next = 1; next <= int(n); ++next) {
        std::optional<VertexIndex> best;
        std::vector<int> best_key;
        for (VertexIndex v = 0; v < n; ++v) {
            if (label[v]) continue;
            bool ready = std::all_of(succ[v].begin(), succ[v].end(),
                                     [&](VertexIndex w) { return label[w] > 0; });
            if (!ready) continue;
            std::vector<int> key;
            for (VertexIndex w : succ[v]) key.push_back(label[w]);
            std::sort(key.rbegin(), key.rend());
            if (!best || key < best_key || (key == best_key && id_less(v, *best))) {
                best = v;
                best_key = std::move(key);
            }
        }
        label[*best] = next;
    }
    // Fill layers from the left, highest label first.
    std::vector<int> layer(n, -1);
    int current = 0;
    std::size_t filled = 0;
    for (std::size_t placed = 0; placed < n; ++placed) {
        std::optional<VertexIndex> pick;
        for (VertexIndex v = 0; v < n; ++v) {
            if (layer[v] >= 0) continue;
            bool ready = std::all_of(pred[v].begin(), pred[v].end(),
                                     [&](VertexIndex u) { return layer[u] >= 0; });
            if (ready && (!pick || label[v] > label[*pick])) pick = v;
        }
        VertexIndex v = *pick;
        bool fits = filled < n_max && std::all_of(pred[v].begin(), pred[v].end(),
                                                  [&](VertexIndex u) { return layer[u] < current; });
        if (!fits) {
            ++current;
            filled = 0;
        }
        layer[v] = current;
        ++filled;
    }
    return layer;
}

}  // namespace

std::vector<int> assign_layers(std::size_t n,
                               const std::vector<std::pair<VertexIndex, VertexIndex>>& arcs,
                               LayeringMethod method, std::size_t n_max,
                               const std::vector<std::string>& ids) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    auto order = topological_order(n, arcs);
    if (order.size() != n) throw std::invalid_argument("layering needs an acyclic graph");
    std::vector<std::vector<VertexIndex>> succ(n), pred(n);
    for (auto [u, v] : arcs) {
        succ[u].push_back(v);
        pred[v].push_back(u);
    }
    if (method == LayeringMethod::CoffmanGraham) return coffman_graham(n, succ, pred, n_max, ids);

    std::vector<int> layer(n, 0);
    if (method == LayeringMethod::MinLayers) {
        for (VertexIndex v : order)
            for (VertexIndex w : succ[v]) layer[w] = std::max(layer[w], layer[v] + 1);
        return layer;
    }
    // List scheduling: topological order, earliest layer with spare capacity.
    std::vector<std::size_t> count;
    for (VertexIndex v : order) {
        int l = 0;
        for (VertexIndex u : pred[v]) l = std::max(l, layer[u] + 1);
        while (std::size_t(l) < count.size() && count[std::size_t(l)] >= n_max) ++l;
        if (std::size_t(l) >= count.size()) count.resize(std::size_t(l) + 1, 0);
        ++count[std::size_t(l)];
        layer[v] = l;
    }
    return layer;
}

void transfer_weight(WeightedGraph& g, std::string_view v) {
    if (!g.directed()) throw std::invalid_argument("weight transfer needs a directed graph");
    VertexIndex vi = g.require_index(v);
    std::vector<std::pair<VertexIndex, double>> in, out;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.ends(e);
        if (b == vi) in.emplace_back(a, g.edge(e).weight);
        if (a == vi) out.emplace_back(b, g.edge(e).weight);
    }
    for (auto [u, wu] : in)
        for (auto [w, ww] : out) {
            if (u == w) continue;
            double amount = std::min(wu, ww);
            const std::string& us = g.vertex(u).id;
            const std::string& ws = g.vertex(w).id;
            if (auto e = g.find_edge(us, ws))
                g.add_edge_weight(*e, amount);
            else
                g.add_edge({us, ws, amount});
        }
}

}  // namespace areagraph::layered
