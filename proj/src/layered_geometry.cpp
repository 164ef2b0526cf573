#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "areagraph/layered_layout.hpp"
#include "layered_internal.hpp"

namespace areagraph::layered {

using namespace detail;

namespace {

// Least-squares non-decreasing fit (pool adjacent violators).
std::vector<double> isotonic(const std::vector<double>& t) {
    struct Block {
        double sum;
        std::size_t n;
    };
    std::vector<Block> blocks;
    for (double v : t) {
        blocks.push_back({v, 1});
        while (blocks.size() > 1) {
            auto& b = blocks[blocks.size() - 1];
            auto& a = blocks[blocks.size() - 2];
            if (a.sum / double(a.n) <= b.sum / double(b.n)) break;
            a.sum += b.sum;
            a.n += b.n;
            blocks.pop_back();
        }
    }
    std::vector<double> out;
    for (const auto& b : blocks) out.insert(out.end(), b.n, b.sum / double(b.n));
    return out;
}

}  // namespace

Placement assign_coordinates(const LayerStructure& ls, const DrawingArea& area,
                             const LayeredParams& p) {
    Placement pl;
    const std::size_t L = ls.layers.size();
    auto chains = edge_chains(ls);
    double x = std::max(0.0, (area.width - total_width(ls, p)) / 2);
    for (std::size_t l = 0; l < L; ++l) {
        double w = layer_width(ls, l);
        pl.layer_left.push_back(x);
        pl.layer_width.push_back(w);
        x += w + p.layer_gap;
    }

    // Minimal offsets of every item from the top of its stack.
    std::vector<std::vector<double>> off(L);
    std::vector<double> slack(L, 0);
    pl.y.resize(L);
    for (std::size_t l = 0; l < L; ++l) {
        const auto& items = ls.layers[l];
        double acc = 0;
        for (std::size_t i = 0; i < items.size(); ++i) {
            double h = item_height(ls, items[i]);
            if (i > 0) acc += separator(ls, l, i - 1, p, &chains);
            off[l].push_back(acc + h / 2);
            acc += h;
        }
        slack[l] = std::max(0.0, area.height - acc);
        for (double o : off[l]) pl.y[l].push_back(slack[l] / 2 + o);
    }

    std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> nb(L);
    for (std::size_t l = 0; l < L; ++l) nb[l].resize(ls.layers[l].size());
    for (const auto& c : chains)
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            nb[c[k].first][c[k].second].push_back(c[k + 1]);
            nb[c[k + 1].first][c[k + 1].second].push_back(c[k]);
        }

    for (int s = 0; s < p.coordinate_sweeps; ++s) {
        for (std::size_t step = 0; step < L; ++step) {
            std::size_t l = s % 2 == 0 ? step : L - 1 - step;
            const std::size_t n = ls.layers[l].size();
            if (n == 0) continue;
            std::vector<double> z(n);
            for (std::size_t i = 0; i < n; ++i) {
                double target = pl.y[l][i];
                if (!nb[l][i].empty()) {
                    double sum = 0;
                    for (auto [ol, oi] : nb[l][i]) sum += pl.y[ol][oi];
                    target = sum / double(nb[l][i].size());
                }
                z[i] = target - off[l][i];
            }
            z = isotonic(z);
            for (std::size_t i = 0; i < n; ++i)
                pl.y[l][i] = std::clamp(z[i], 0.0, slack[l]) + off[l][i];
        }
    }
    return pl;
}

double stroke_width(double weight, const LayeredParams& p) {
    return std::clamp(p.stroke_coeff * std::pow(weight, p.stroke_exponent), p.stroke_min,
                      p.stroke_max);
}

namespace {

bool strictly_inside(double y, double a, double b) {
    return y > std::min(a, b) && y < std::max(a, b);
}

bool on_end(double y, double a, double b) { return y == a || y == b; }

// Touching contacts when a is drawn left of b.
int touch_cost(const Hop& a, const Hop& b) {
    return int(on_end(b.left.y, a.left.y, a.right.y) && a.left.y != a.right.y) +
           int(on_end(a.right.y, b.left.y, b.right.y) && b.left.y != b.right.y);
}

bool reaches(const std::vector<std::vector<std::size_t>>& out, std::size_t from, std::size_t to) {
    std::vector<char> seen(out.size(), 0);
    std::vector<std::size_t> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        if (v == to) return true;
        for (std::size_t w : out[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return false;
}

// Orders the hops of one gap; false when the constraints were cyclic.
bool order_gap(const std::vector<Hop>& hops, std::vector<std::size_t>& idx) {
    const std::size_t n = idx.size();
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::pair<std::size_t, std::size_t>> ties;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Hop& a = hops[idx[i]];
            const Hop& b = hops[idx[j]];
            int ab = order_cost(a, b), ba = order_cost(b, a);
            if (ab < ba)
                out[i].push_back(j);
            else if (ba < ab)
                out[j].push_back(i);
            else if (touch_cost(a, b) != touch_cost(b, a))
                ties.emplace_back(i, j);
        }
    for (auto [i, j] : ties) {
        const Hop& a = hops[idx[i]];
        const Hop& b = hops[idx[j]];
        auto [from, to] = touch_cost(a, b) < touch_cost(b, a) ? std::pair{i, j} : std::pair{j, i};
        if (!reaches(out, to, from)) out[from].push_back(to);
    }
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& list : out)
        for (std::size_t w : list) ++indeg[w];
    auto key = [&](std::size_t i) {
        const Hop& h = hops[idx[i]];
        return std::make_tuple(h.left.y, h.right.y, h.edge, i);
    };
    std::set<decltype(key(0))> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.insert(key(i));
    std::vector<std::size_t> result;
    while (!ready.empty()) {
        std::size_t i = std::get<3>(*ready.begin());
        ready.erase(ready.begin());
        result.push_back(idx[i]);
        for (std::size_t w : out[i])
            if (--indeg[w] == 0) ready.insert(key(w));
    }
    if (result.size() != n) {
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return std::make_tuple(hops[a].left.y, hops[a].right.y, hops[a].edge) <
                   std::make_tuple(hops[b].left.y, hops[b].right.y, hops[b].edge);
        });
        return false;
    }
    idx = std::move(result);
    return true;
}

// Order-preserving 1-D relaxation of the vertical segments inside [lo, hi].
void relax(std::vector<double>& x, double lo, double hi, int iterations, double centering) {
    const std::size_t n = x.size();
    if (n == 0) return;
    const double width = hi - lo;
    const double rep = 0.01 * width * width;
    const double min_sep = centering > 0 ? 1e-3 : 1e-6;
    const double mid = (lo + hi) / 2;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t k = 0; k < n; ++k) {
            bool walls = centering == 0;
            double prev = k > 0 ? x[k - 1] : lo;
            double next = k + 1 < n ? x[k + 1] : hi;
            double f = 0;
            if (k > 0 || walls) f += rep / std::max(x[k] - prev, min_sep);
            if (k + 1 < n || walls) f -= rep / std::max(next - x[k], min_sep);
            f += centering * (mid - x[k]);
            double step = std::clamp(0.1 * f, -0.05 * width, 0.05 * width);
            x[k] = std::clamp(x[k] + step, prev + min_sep, next - min_sep);
        }
    }
}

// A hop drawn left of another whose start lies on its end level would share a
// horizontal run with it. Moves one vertex port off that level so the two
// meet in a single proper crossing instead.
void separate_runs(const LayerStructure& ls, RoutingPlan& plan, const std::vector<std::size_t>& idx,
                   const std::vector<char>& left_vertex, const std::vector<char>& right_vertex,
                   const LayeredParams& p) {
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            Hop& a = plan.hops[idx[i]];
            Hop& b = plan.hops[idx[j]];
            if (a.right.y != b.left.y || a.left.y == b.left.y || a.right.y == b.right.y) continue;
            auto shift = [&](VertexIndex v, double from, double towards) {
                double room = 0.25 * ls.vertices[v].height;
                double d = std::min({p.gap_parallel, room, 0.5 * std::abs(towards - from)});
                return from + (towards > from ? d : -d);
            };
            if (right_vertex[idx[i]]) {
                double y = shift(ls.edges[a.edge].head(), a.right.y, b.right.y);
                a.right.y = a.port_right.y = y;
            } else if (left_vertex[idx[j]]) {
                double y = shift(ls.edges[b.edge].tail(), b.left.y, a.left.y);
                b.left.y = b.port_left.y = y;
            } else {
                plan.log.push_back("routing: shared run between dummy segments in gap " +
                                   std::to_string(a.gap));
            }
        }
}

}  // namespace

int order_cost(const Hop& a, const Hop& b) {
    return int(strictly_inside(b.left.y, a.left.y, a.right.y)) +
           int(strictly_inside(a.right.y, b.left.y, b.right.y));
}

RoutingPlan route_edges(const LayerStructure& ls, const Placement& pl, const LayeredParams& p) {
    RoutingPlan plan;
    auto chains = edge_chains(ls);
    const std::size_t L = ls.layers.size();
    auto band_right = [&](std::size_t l) { return pl.layer_left[l] + pl.layer_width[l]; };
    auto center_x = [&](std::size_t l) { return pl.layer_left[l] + pl.layer_width[l] / 2; };

    // Port heights per (edge, side).
    std::vector<double> out_y(ls.edges.size(), 0), in_y(ls.edges.size(), 0);
    for (std::size_t e = 0; e < chains.size(); ++e) {
        if (chains[e].empty()) continue;
        auto [lt, it] = chains[e].front();
        auto [lh, ih] = chains[e].back();
        out_y[e] = pl.y[lt][it];
        in_y[e] = pl.y[lh][ih];
    }
    if (p.ports == PortMode::PerEdge) {
        std::vector<std::vector<std::pair<double, std::size_t>>> outs(ls.vertices.size()),
            ins(ls.vertices.size());
        for (std::size_t e = 0; e < chains.size(); ++e) {
            const auto& c = chains[e];
            if (c.empty()) continue;
            outs[ls.edges[e].tail()].emplace_back(pl.y[c[1].first][c[1].second], e);
            auto prev = c[c.size() - 2];
            ins[ls.edges[e].head()].emplace_back(pl.y[prev.first][prev.second], e);
        }
        auto spread = [&](std::vector<std::pair<double, std::size_t>>& list, VertexIndex v,
                          std::vector<double>& target) {
            std::sort(list.begin(), list.end());
            const Vertex& vx = ls.vertices[v];
            double top = pl.y[std::size_t(ls.layer_of[v])][0];
            const auto& items = ls.layers[std::size_t(ls.layer_of[v])];
            for (std::size_t i = 0; i < items.size(); ++i)
                if (!items[i].dummy && items[i].index == v) top = pl.y[std::size_t(ls.layer_of[v])][i];
            top -= vx.height / 2;
            for (std::size_t k = 0; k < list.size(); ++k)
                target[list[k].second] =
                    top + vx.height * double(k + 1) / double(list.size() + 1);
        };
        for (VertexIndex v = 0; v < ls.vertices.size(); ++v) {
            if (!ls.present[v]) continue;
            spread(outs[v], v, out_y);
            spread(ins[v], v, in_y);
        }
    }

    plan.gap_order.resize(L > 0 ? L - 1 : 0);
    plan.stroke_width.assign(ls.edges.size(), 0);
    std::vector<char> left_vertex, right_vertex;
    for (std::size_t e = 0; e < chains.size(); ++e) {
        const auto& c = chains[e];
        if (c.empty()) continue;
        plan.stroke_width[e] = stroke_width(ls.edges[e].weight, p);
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            std::size_t g = c[k].first;
            Hop h;
            h.edge = e;
            h.gap = g;
            if (k == 0)
                h.port_left = {center_x(g) + ls.vertices[ls.edges[e].tail()].width / 2, out_y[e]};
            else
                h.port_left = {band_right(g), pl.y[g][c[k].second]};
            if (k + 2 == c.size())
                h.port_right = {center_x(g + 1) - ls.vertices[ls.edges[e].head()].width / 2,
                                in_y[e]};
            else
                h.port_right = {pl.layer_left[g + 1], pl.y[g + 1][c[k + 1].second]};
            h.left = {band_right(g), h.port_left.y};
            h.right = {pl.layer_left[g + 1], h.port_right.y};
            plan.gap_order[g].push_back(plan.hops.size());
            plan.hops.push_back(h);
            left_vertex.push_back(k == 0);
            right_vertex.push_back(k + 2 == c.size());
        }
    }
    for (std::size_t g = 0; g < plan.gap_order.size(); ++g) {
        auto& idx = plan.gap_order[g];
        if (!order_gap(plan.hops, idx))
            plan.log.push_back("routing: cyclic segment constraints in gap " + std::to_string(g) +
                               "; using port order");
        double lo = band_right(g), hi = pl.layer_left[g + 1];
        std::vector<double> xs;
        for (std::size_t k = 0; k < idx.size(); ++k)
            xs.push_back(lo + (hi - lo) * double(k + 1) / double(idx.size() + 1));
        relax(xs, lo, hi, p.relax_iterations, 0.0);
        for (std::size_t k = 0; k < idx.size(); ++k) plan.hops[idx[k]].x = xs[k];
        separate_runs(ls, plan, idx, left_vertex, right_vertex, p);
    }
    return plan;
}

namespace {

DrawnEdge drawn(const LayerStructure& ls, std::size_t e, const RoutingPlan& plan) {
    const auto& le = ls.edges[e];
    DrawnEdge d;
    d.src = ls.vertices[le.src].id;
    d.dst = ls.vertices[le.dst].id;
    d.weight = le.weight;
    d.reversed = le.reversed;
    d.stroke_width = plan.stroke_width[e];
    return d;
}

std::vector<std::vector<std::size_t>> hops_by_edge(const LayerStructure& ls,
                                                   const RoutingPlan& plan) {
    std::vector<std::vector<std::size_t>> by(ls.edges.size());
    for (std::size_t h = 0; h < plan.hops.size(); ++h) by[plan.hops[h].edge].push_back(h);
    for (auto& list : by)
        std::sort(list.begin(), list.end(),
                  [&](std::size_t a, std::size_t b) { return plan.hops[a].gap < plan.hops[b].gap; });
    return by;
}

void push_point(std::vector<Point>& pts, Point q) {
    if (pts.empty() || !(pts.back() == q)) pts.push_back(q);
}

}  // namespace

Layout orthogonal_layout(const LayerStructure& ls, const Placement& pl, const RoutingPlan& plan) {
    Layout out;
    for (std::size_t l = 0; l < ls.layers.size(); ++l)
        for (std::size_t i = 0; i < ls.layers[l].size(); ++i) {
            const auto& it = ls.layers[l][i];
            if (!it.dummy)
                out.positions[ls.vertices[it.index].id] = {pl.layer_left[l] + pl.layer_width[l] / 2,
                                                           pl.y[l][i]};
        }
    auto by = hops_by_edge(ls, plan);
    for (std::size_t e = 0; e < ls.edges.size(); ++e) {
        if (by[e].empty()) continue;
        DrawnEdge d = drawn(ls, e, plan);
        d.geometry.style = EdgeStyle::Orthogonal;
        auto& pts = d.geometry.points;
        for (std::size_t h : by[e]) {
            const Hop& hop = plan.hops[h];
            push_point(pts, hop.port_left);
            push_point(pts, hop.left);
            push_point(pts, {hop.x, hop.left.y});
            push_point(pts, {hop.x, hop.right.y});
            push_point(pts, hop.right);
            push_point(pts, hop.port_right);
        }
        out.edges.push_back(std::move(d));
    }
    return out;
}

Layout to_cubic_bezier(const LayerStructure& ls, const Placement& pl, RoutingPlan plan,
                       const LayeredParams& p) {
    for (std::size_t g = 0; g < plan.gap_order.size(); ++g) {
        const auto& idx = plan.gap_order[g];
        double lo = pl.layer_left[g] + pl.layer_width[g], hi = pl.layer_left[g + 1];
        std::vector<double> xs;
        for (std::size_t h : idx) xs.push_back(plan.hops[h].x);
        relax(xs, lo, hi, p.relax_iterations, 1.0);
        for (std::size_t k = 0; k < idx.size(); ++k) plan.hops[idx[k]].x = xs[k];
    }
    Layout out = orthogonal_layout(ls, pl, plan);
    out.edges.clear();
    auto by = hops_by_edge(ls, plan);
    for (std::size_t e = 0; e < ls.edges.size(); ++e) {
        if (by[e].empty()) continue;
        DrawnEdge d = drawn(ls, e, plan);
        d.geometry.style = EdgeStyle::CubicChain;
        auto& pts = d.geometry.points;
        for (std::size_t h : by[e]) {
            const Hop& hop = plan.hops[h];
            if (pts.empty()) {
                pts.push_back(hop.port_left);
            } else {
                // Straight run through a dummy's layer band.
                Point a = pts.back(), b = hop.port_left;
                pts.insert(pts.end(), {a, b, b});
            }
            pts.insert(pts.end(), {Point{hop.x, hop.left.y}, Point{hop.x, hop.right.y},
                                   hop.port_right});
        }
        out.edges.push_back(std::move(d));
    }
    return out;
}

}  // namespace areagraph::layered
