#include <algorithm>
#include <cmath>
#include <numeric>

#include "areagraph/layered_layout.hpp"
#include "layered_internal.hpp"

namespace areagraph::layered {

using namespace detail;

namespace {

struct Link {
    std::size_t node;
    std::size_t edge;
};

// Items as nodes with fixed ids; positions change while sweeping.
class OrderState {
public:
    OrderState(const LayerStructure& ls, CrossingMethod method, CrossingWeight conv)
        : ls_(ls), method_(method), conv_(conv) {
        std::size_t id = 0;
        std::vector<std::vector<std::size_t>> id_of(ls.layers.size());
        for (std::size_t l = 0; l < ls.layers.size(); ++l) {
            order_.emplace_back();
            for (std::size_t i = 0; i < ls.layers[l].size(); ++i) {
                id_of[l].push_back(id);
                order_[l].push_back(id);
                items_.push_back(ls.layers[l][i]);
                pos_.push_back(i);
                ++id;
            }
        }
        left_.resize(id);
        right_.resize(id);
        auto chains = edge_chains(ls);
        for (std::size_t e = 0; e < chains.size(); ++e)
            for (std::size_t k = 0; k + 1 < chains[e].size(); ++k) {
                std::size_t a = id_of[chains[e][k].first][chains[e][k].second];
                std::size_t b = id_of[chains[e][k + 1].first][chains[e][k + 1].second];
                right_[a].push_back({b, e});
                left_[b].push_back({a, e});
            }
    }

    double cost(std::size_t e, std::size_t f) const {
        if (method_ != CrossingMethod::AdjacentExchangeWeighted) return 1.0;
        return crossing_weight(ls_.edges[e].weight, ls_.edges[f].weight, conv_);
    }

    // Change of the objective when a (directly above b) and b trade places.
    double swap_delta(std::size_t a, std::size_t b) const {
        double d = 0;
        for (const auto* side : {&left_, &right_})
            for (const Link& x : (*side)[a])
                for (const Link& y : (*side)[b]) {
                    std::size_t px = pos_[x.node], py = pos_[y.node];
                    if (px < py)
                        d += cost(x.edge, y.edge);
                    else if (px > py)
                        d -= cost(x.edge, y.edge);
                }
        return d;
    }

    void exchange_layer(std::size_t l) {
        auto& ord = order_[l];
        for (std::size_t pass = 0; pass <= ord.size(); ++pass) {
            bool improved = false;
            for (std::size_t i = 0; i + 1 < ord.size(); ++i) {
                if (swap_delta(ord[i], ord[i + 1]) < -1e-9) {
                    std::swap(ord[i], ord[i + 1]);
                    pos_[ord[i]] = i;
                    pos_[ord[i + 1]] = i + 1;
                    improved = true;
                }
            }
            if (!improved) break;
        }
    }

    void median_layer(std::size_t l, bool from_left) {
        auto& ord = order_[l];
        std::vector<std::pair<double, std::size_t>> keyed;
        for (std::size_t node : ord) {
            const auto& nb = from_left ? left_[node] : right_[node];
            double key = double(pos_[node]);
            if (!nb.empty()) {
                std::vector<std::size_t> p;
                for (const Link& x : nb) p.push_back(pos_[x.node]);
                std::sort(p.begin(), p.end());
                std::size_t m = p.size() / 2;
                key = p.size() % 2 ? double(p[m]) : 0.5 * double(p[m - 1] + p[m]);
            }
            keyed.emplace_back(key, node);
        }
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < ord.size(); ++i) {
            ord[i] = keyed[i].second;
            pos_[ord[i]] = i;
        }
    }

    std::size_t crossings() const {
        std::size_t total = 0;
        for (std::size_t l = 0; l + 1 < order_.size(); ++l) {
            std::vector<std::pair<std::size_t, std::size_t>> segs;
            for (std::size_t node : order_[l])
                for (const Link& x : right_[node]) segs.emplace_back(pos_[node], pos_[x.node]);
            for (std::size_t i = 0; i < segs.size(); ++i)
                for (std::size_t j = i + 1; j < segs.size(); ++j) {
                    auto [a, b] = segs[i];
                    auto [c, d] = segs[j];
                    if ((a < c && b > d) || (a > c && b < d)) ++total;
                }
        }
        return total;
    }

    // Depth-first order from the first layer: each item is placed when first
    // reached, so subtrees start out contiguous.
    void depth_first_order() {
        std::vector<char> seen(items_.size(), 0);
        std::vector<std::vector<std::size_t>> next(order_.size());
        std::vector<std::size_t> layer_of(items_.size());
        for (std::size_t l = 0; l < order_.size(); ++l)
            for (std::size_t node : order_[l]) layer_of[node] = l;
        auto visit = [&](std::size_t root) {
            std::vector<std::size_t> stack{root};
            while (!stack.empty()) {
                std::size_t v = stack.back();
                stack.pop_back();
                if (seen[v]) continue;
                seen[v] = 1;
                next[layer_of[v]].push_back(v);
                auto kids = right_[v];
                std::stable_sort(kids.begin(), kids.end(),
                                 [&](const Link& a, const Link& b) { return pos_[a.node] < pos_[b.node]; });
                for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                    if (!seen[it->node]) stack.push_back(it->node);
            }
        };
        for (const auto& layer : order_)
            for (std::size_t node : layer)
                if (!seen[node]) visit(node);
        set_order(next);
    }

    void run(int rounds) {
        const std::size_t L = order_.size();
        if (method_ == CrossingMethod::Median) {
            auto best = order_;
            std::size_t best_count = crossings();
            for (int r = 0; r < rounds; ++r) {
                for (std::size_t l = 1; l < L; ++l) median_layer(l, true);
                keep_best(best, best_count);
                for (std::size_t l = L; l-- > 1;) median_layer(l - 1, false);
                keep_best(best, best_count);
            }
            set_order(best);
            return;
        }
        for (int r = 0; r < rounds; ++r) {
            for (std::size_t l = 0; l < L; ++l) exchange_layer(l);
            for (std::size_t l = L; l-- > 0;) exchange_layer(l);
        }
    }

    void write_back(LayerStructure& ls) const {
        for (std::size_t l = 0; l < order_.size(); ++l)
            for (std::size_t i = 0; i < order_[l].size(); ++i) ls.layers[l][i] = items_[order_[l][i]];
    }

private:
    void keep_best(std::vector<std::vector<std::size_t>>& best, std::size_t& best_count) {
        std::size_t c = crossings();
        if (c < best_count) {
            best_count = c;
            best = order_;
        }
    }

    void set_order(const std::vector<std::vector<std::size_t>>& ord) {
        order_ = ord;
        for (const auto& layer : order_)
            for (std::size_t i = 0; i < layer.size(); ++i) pos_[layer[i]] = i;
    }

    const LayerStructure& ls_;
    CrossingMethod method_;
    CrossingWeight conv_;
    std::vector<std::vector<std::size_t>> order_;
    std::vector<LayerItem> items_;
    std::vector<std::size_t> pos_;
    std::vector<std::vector<Link>> left_, right_;
};

bool fits(const LayerStructure& ls, const DrawingArea& area, const LayeredParams& p) {
    if (total_width(ls, p) > area.width) return false;
    auto chains = edge_chains(ls);
    for (std::size_t l = 0; l < ls.layers.size(); ++l)
        if (layer_height_with(ls, l, p, &chains) > area.height) return false;
    return true;
}

}  // namespace

void minimize_crossings(LayerStructure& ls, CrossingMethod method, int rounds,
                        CrossingWeight convention, bool reset_order) {
    insert_dummies(ls);
    OrderState st(ls, method, convention);
    if (reset_order) st.depth_first_order();
    st.run(rounds);
    st.write_back(ls);
}

std::vector<VertexIndex> reinsert_vertices(LayerStructure& ls, const WeightedGraph& source,
                                           std::vector<VertexIndex> pool, const DrawingArea& area,
                                           const LayeredParams& p, RunLog* log) {
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::erase_if(pool, [&](VertexIndex v) { return ls.present[v]; });
    std::sort(pool.begin(), pool.end(), [&](VertexIndex a, VertexIndex b) {
        const Vertex& va = ls.vertices[a];
        const Vertex& vb = ls.vertices[b];
        double ia = vertex_importance(va), ib = vertex_importance(vb);
        if (ia != ib) return ia > ib;
        if (va.weight != vb.weight) return va.weight > vb.weight;
        return va.id < vb.id;
    });
    insert_dummies(ls);
    std::vector<VertexIndex> inserted;
    for (VertexIndex v : pool) {
        const Vertex& vx = ls.vertices[v];
        for (std::size_t L = 0; L < ls.layers.size(); ++L) {
            // Cheap necessary conditions before building a tentative copy.
            if (layer_height(ls, L, p) + vx.height + (ls.layers[L].empty() ? 0 : p.gap_ee) >
                area.height)
                continue;
            double lw = layer_width(ls, L);
            if (vx.width > lw && total_width(ls, p) - lw + vx.width > area.width) continue;

            LayerStructure t = ls;
            t.present[v] = 1;
            t.layer_of[v] = int(L);
            t.layers[L].push_back({false, v});
            // Only edges that keep their orientation and run left to right.
            bool fed = false;
            for (EdgeIndex e = 0; e < source.edge_count(); ++e) {
                auto [a, b] = source.ends(e);
                if (a != v && b != v) continue;
                VertexIndex o = a == v ? b : a;
                auto& le = t.edges[e];
                if (!t.present[o] || t.layer_of[le.tail()] >= t.layer_of[le.head()]) continue;
                le.alive = true;
                le.weight = source.edge(e).weight;
                fed = fed || le.head() == v;
            }
            if (!fed || !reachable(t)[v]) continue;
            insert_dummies(t);
            if (!fits(t, area, p)) continue;
            LayerStructure u = t;
            minimize_crossings(u, p.crossing, 1, p.crossing_convention);
            ls = fits(u, area, p) ? std::move(u) : std::move(t);
            inserted.push_back(v);
            if (log)
                log->push_back("reinsert-vertex " + vx.id + " (layer " + std::to_string(L) +
                               ", i(v)=" + fmt(vertex_importance(vx)) + ")");
            break;
        }
    }
    return inserted;
}

}  // namespace areagraph::layered
