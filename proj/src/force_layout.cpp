#include "areagraph/force_layout.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace areagraph::force {

void ForceParams::validate() const {
    if (!(l_unit > 0)) throw std::invalid_argument("l_unit must be positive");
    double adj = adj_threshold(), nadj = nadj_threshold();
    if (!(adj >= 0 && adj < nadj && nadj < l_unit))
        throw std::invalid_argument("need 0 <= l_adj < l_nadj < l_unit");
    if (shrink_steps < 1) throw std::invalid_argument("shrink_steps must be >= 1");
    if (!(cooling > 0 && cooling < 1)) throw std::invalid_argument("cooling must be in (0,1)");
    if (!(c_deg > 0)) throw std::invalid_argument("c_deg must be positive");
    if (!(c_len > 0)) throw std::invalid_argument("c_len must be positive");
    if (!(c_pre > 0)) throw std::invalid_argument("c_pre must be positive");
    if (!(inner_fraction > 0 && inner_fraction <= 1))
        throw std::invalid_argument("inner_fraction must be in (0,1]");
    if (!(eps_move > 0)) throw std::invalid_argument("eps_move must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(max_step_factor > 0)) throw std::invalid_argument("max_step_factor must be positive");
}

// ---------------------------------------------------------------------------
// Forces

namespace {
constexpr double kCoincident = 1e-12;
}

Vec2 force_repulsive(Point u, Point v, double l_unit) {
    double d = distance(u, v);
    if (d < kCoincident) return {0, 0};
    return unit(u, v) * (l_unit * l_unit / d);
}

Vec2 force_attractive(Point u, Point v, double l_unit) {
    double d = distance(u, v);
    if (d < kCoincident) return {0, 0};
    return unit(v, u) * (d * d / l_unit);
}

Vec2 force_edge_repulsion(const Rect& v, const Segment& edge, double l_unit,
                          double inner_fraction, int tie_side) {
    auto hit = segment_rect_intersection(edge, v, inner_fraction);
    if (hit.kind != RectHit::Inner) return {0, 0};
    double d = distance(v.center, hit.projection);
    if (d >= l_unit) return {0, 0};
    Vec2 dir;
    if (d > kCoincident) {
        dir = unit(hit.projection, v.center);
    } else {
        Vec2 along = unit(edge.a, edge.b);
        dir = Vec2{-along.y, along.x} * (tie_side >= 0 ? 1.0 : -1.0);
    }
    double m = l_unit - d;
    return dir * (m * m);
}

Vec2 force_gravity(Point v, Point center) { return center - v; }

Vec2 force_frame_virtual(const Rect& v, const Frame& frame, double l_unit) {
    const Rect& f = frame.bounds;
    // Gap from each side of the vertex box to the matching frame side.
    const double gaps[4] = {v.left() - f.left(), f.right() - v.right(), v.top() - f.top(),
                            f.bottom() - v.bottom()};
    const Vec2 inward[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (gaps[i] < gaps[best]) best = i;
    double d = std::max(gaps[best], kFrameDistanceFloor);
    return inward[best] * (l_unit * l_unit / d);
}

// ---------------------------------------------------------------------------
// Pressure and stress

int octant_of(Vec2 v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0) a += 2 * std::numbers::pi;
    int o = int(std::floor(a / (std::numbers::pi / 4)));
    return std::clamp(o, 0, 7);
}

PressureReport pressure_from_octants(const std::array<Vec2, 8>& sums) {
    PressureReport r;
    for (int i = 0; i < 8; ++i) r.octant_length[i] = norm(sums[i]);
    const auto& l = r.octant_length;
    for (int i = 0; i < 8; ++i) {
        double q = std::max({std::min(l[i], l[(i + 3) % 8]), std::min(l[i], l[(i + 4) % 8]),
                             std::min(l[i], l[(i + 5) % 8])});
        r.pressure = std::max(r.pressure, q);
    }
    return r;
}

PressureReport vertex_pressure(std::span<const Vec2> forces) {
    std::array<Vec2, 8> sums{};
    for (Vec2 f : forces)
        if (f.x != 0 || f.y != 0) sums[octant_of(f)] += f;
    return pressure_from_octants(sums);
}

double vertex_stress(double pressure, double weight, std::size_t degree, double c_deg) {
    return pressure / (weight * (double(degree) + c_deg));
}

double edge_stress(double weight, std::span<const double> crossing_weights) {
    double sum = std::accumulate(crossing_weights.begin(), crossing_weights.end(), 0.0);
    return sum * double(crossing_weights.size()) / weight;
}

// ---------------------------------------------------------------------------
// Frame handling

Frame shrink_frame(const Frame& initial, const DrawingArea& target, int step, int steps) {
    const Rect& r = initial.bounds;
    if (step >= steps) return {{r.center, target.width, target.height}};
    double dw = std::max(0.0, r.width - target.width) / steps;
    double dh = std::max(0.0, r.height - target.height) / steps;
    return {{r.center, std::max(target.width, r.width - dw * step),
             std::max(target.height, r.height - dh * step)}};
}

Point push_inside(Point c, double width, double height, const Frame& frame) {
    const Rect& f = frame.bounds;
    auto clamp_axis = [](double v, double lo, double hi, double mid) {
        return lo > hi ? mid : std::clamp(v, lo, hi);
    };
    return {clamp_axis(c.x, f.left() + width / 2, f.right() - width / 2, f.center.x),
            clamp_axis(c.y, f.top() + height / 2, f.bottom() - height / 2, f.center.y)};
}

// ---------------------------------------------------------------------------
// Working state shared by the stages

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t hash3(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix(splitmix(splitmix(seed) ^ a) ^ (b * 0x632BE59BD9B4E019ull));
}

std::vector<std::size_t> lexicographic_ranks(const WeightedGraph& g) {
    std::vector<std::size_t> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return g.vertex(a).id < g.vertex(b).id; });
    std::vector<std::size_t> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    return rank;
}

struct Removal {
    RemovalKind kind;
    std::size_t index;
    double stress;
};

class State {
public:
    State(const WeightedGraph& g, std::vector<Point> pos, const ForceParams& p, Point center)
        : g_(g), p_(p), center_(center), pos_(std::move(pos)) {
        const std::size_t n = g.vertex_count();
        hw_.resize(n);
        hh_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            hw_[i] = g.vertex(i).width / 2;
            hh_[i] = g.vertex(i).height / 2;
        }
        valive_.assign(n, 1);
        ealive_.assign(g.edge_count(), 1);
        degree_.assign(n, 0);
        adj_.assign(n * n, 0);
        for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
            auto [u, w] = g.ends(e);
            ends_.emplace_back(u, w);
            ++degree_[u];
            ++degree_[w];
            ++adj_[u * n + w];
            ++adj_[w * n + u];
        }
        rank_ = lexicographic_ranks(g);
        disp_.resize(n);
    }

    const std::vector<Point>& positions() const { return pos_; }
    std::vector<Point>& positions() { return pos_; }
    bool vertex_alive(std::size_t i) const { return valive_[i]; }
    bool edge_alive(std::size_t e) const { return ealive_[e]; }
    std::size_t alive_vertex_count() const {
        return std::size_t(std::count(valive_.begin(), valive_.end(), 1));
    }

    Rect rect(std::size_t i) const { return {pos_[i], 2 * hw_[i], 2 * hh_[i]}; }

    void remove_vertex(std::size_t v) {
        valive_[v] = 0;
        for (EdgeIndex e = 0; e < ends_.size(); ++e)
            if (ealive_[e] && (ends_[e].first == v || ends_[e].second == v)) remove_edge(e);
    }

    void remove_edge(std::size_t e) {
        if (!ealive_[e]) return;
        ealive_[e] = 0;
        auto [u, w] = ends_[e];
        --degree_[u];
        --degree_[w];
        const std::size_t n = pos_.size();
        --adj_[u * n + w];
        --adj_[w * n + u];
    }

    // Returns the number of iterations performed.
    int equilibrium(const std::optional<Frame>& frame, ActiveForces active, bool* converged) {
        const std::size_t n = pos_.size();
        const double l = p_.l_unit;
        const double cap = p_.max_step_factor * l;
        double scale = 1.0;
        if (converged) *converged = false;
        int t = 0;
        for (; t < p_.max_iterations; ++t) {
            std::fill(disp_.begin(), disp_.end(), Vec2{0, 0});
            accumulate_pairs();
            for (EdgeIndex e = 0; e < ends_.size(); ++e) {
                if (!ealive_[e]) continue;
                auto [u, w] = ends_[e];
                Vec2 fa = force_attractive(pos_[u], pos_[w], l) * p_.alpha_a;
                disp_[w] += fa;
                disp_[u] -= fa;
            }
            if (active.gravity)
                for (std::size_t i = 0; i < n; ++i)
                    if (valive_[i]) disp_[i] += force_gravity(pos_[i], center_) * p_.alpha_g;
            if (active.edge_repulsion) accumulate_edge_repulsion();

            double max_move = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!valive_[i]) continue;
                Vec2 step = disp_[i] * scale;
                double len = norm(step);
                if (len > cap) step *= cap / len;
                Point np = pos_[i] + step;
                if (frame) np = push_inside(np, 2 * hw_[i], 2 * hh_[i], *frame);
                max_move = std::max(max_move, distance(np, pos_[i]));
                pos_[i] = np;
            }
            scale *= p_.cooling;
            if (max_move < p_.eps_move) {
                if (converged) *converged = true;
                return t + 1;
            }
        }
        return t;
    }

    bool guard() const {
        const std::size_t n = pos_.size();
        const double adj = p_.adj_threshold(), nadj = p_.nadj_threshold();
        for (EdgeIndex e = 0; e < ends_.size(); ++e) {
            if (!ealive_[e]) continue;
            if (rect_distance(rect(ends_[e].first), rect(ends_[e].second)) < adj) return true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!valive_[i]) continue;
            Rect ri = rect(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!valive_[j] || adj_[i * n + j]) continue;
                if (rect_distance(ri, rect(j)) < nadj) return true;
            }
        }
        return false;
    }

    double average_edge_length(bool* any) const {
        double sum = 0;
        std::size_t k = 0;
        for (EdgeIndex e = 0; e < ends_.size(); ++e) {
            if (!ealive_[e]) continue;
            sum += distance(pos_[ends_[e].first], pos_[ends_[e].second]);
            ++k;
        }
        *any = k > 0;
        return k ? sum / double(k) : 0.0;
    }

    // Per-vertex octant sums of the weighted force vectors at the current
    // positions, including the virtual frame force.
    std::vector<std::array<Vec2, 8>> octant_sums(const std::optional<Frame>& frame,
                                                 ActiveForces active) const {
        const std::size_t n = pos_.size();
        const double l = p_.l_unit;
        std::vector<std::array<Vec2, 8>> sums(n);
        auto add = [&](std::size_t v, Vec2 f) {
            if (f.x != 0 || f.y != 0) sums[v][octant_of(f)] += f;
        };
        for (std::size_t i = 0; i < n; ++i) {
            if (!valive_[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!valive_[j]) continue;
                Vec2 f = force_repulsive(pos_[i], pos_[j], l) * p_.alpha_r;
                add(j, f);
                add(i, -f);
            }
        }
        for (EdgeIndex e = 0; e < ends_.size(); ++e) {
            if (!ealive_[e]) continue;
            auto [u, w] = ends_[e];
            Vec2 f = force_attractive(pos_[u], pos_[w], l) * p_.alpha_a;
            add(w, f);
            add(u, -f);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!valive_[i]) continue;
            if (active.gravity) add(i, force_gravity(pos_[i], center_) * p_.alpha_g);
            if (frame) add(i, force_frame_virtual(rect(i), *frame, l) * p_.alpha_f);
        }
        if (active.edge_repulsion) {
            for (EdgeIndex e = 0; e < ends_.size(); ++e) {
                if (!ealive_[e]) continue;
                for (std::size_t v = 0; v < n; ++v) {
                    Vec2 f = edge_force(e, v);
                    add(v, f * p_.alpha_e);
                }
            }
        }
        return sums;
    }

    Removal select_removal(const std::optional<Frame>& frame, ActiveForces active) const {
        bool any_edge = false;
        double avg = average_edge_length(&any_edge);
        if (!any_edge || avg <= p_.l_unit * p_.c_len) return select_vertex(frame, active);
        return select_edge();
    }

    void apply(const Removal& r) {
        if (r.kind == RemovalKind::Vertex)
            remove_vertex(r.index);
        else
            remove_edge(r.index);
    }

    std::string describe(const Removal& r) const {
        if (r.kind == RemovalKind::Vertex) return g_.vertex(r.index).id;
        return g_.edge(r.index).src + "-" + g_.edge(r.index).dst;
    }

    WeightedGraph alive_subgraph() const {
        WeightedGraph out(g_.directed());
        for (std::size_t i = 0; i < pos_.size(); ++i)
            if (valive_[i]) out.add_vertex(g_.vertex(i));
        for (EdgeIndex e = 0; e < ends_.size(); ++e)
            if (ealive_[e]) out.add_edge(g_.edge(e));
        if (g_.start() && out.has_vertex(*g_.start())) out.set_start(*g_.start());
        return out;
    }

    std::vector<Point> alive_positions() const {
        std::vector<Point> out;
        for (std::size_t i = 0; i < pos_.size(); ++i)
            if (valive_[i]) out.push_back(pos_[i]);
        return out;
    }

    Rect bounding_box() const {
        double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
        for (std::size_t i = 0; i < pos_.size(); ++i) {
            if (!valive_[i]) continue;
            Rect r = rect(i);
            x0 = std::min(x0, r.left());
            x1 = std::max(x1, r.right());
            y0 = std::min(y0, r.top());
            y1 = std::max(y1, r.bottom());
        }
        return Rect::from_bounds(x0, y0, x1, y1);
    }

private:
    void accumulate_pairs() {
        const std::size_t n = pos_.size();
        const double l2 = p_.l_unit * p_.l_unit;
        for (std::size_t i = 0; i < n; ++i) {
            if (!valive_[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!valive_[j]) continue;
                double dx = pos_[j].x - pos_[i].x;
                double dy = pos_[j].y - pos_[i].y;
                double d2 = dx * dx + dy * dy;
                if (d2 < kCoincident * kCoincident) {
                    separate(i, j);
                    dx = pos_[j].x - pos_[i].x;
                    dy = pos_[j].y - pos_[i].y;
                    d2 = dx * dx + dy * dy;
                }
                // l^2/d along the unit vector: l^2 * (dx,dy) / d^2
                double k = p_.alpha_r * l2 / d2;
                Vec2 f{dx * k, dy * k};
                disp_[j] += f;
                disp_[i] -= f;
            }
        }
    }

    // Coincident centres: nudge the lexicographically larger vertex by 1e-6 cm.
    void separate(std::size_t i, std::size_t j) {
        std::size_t mover = rank_[i] > rank_[j] ? i : j;
        std::size_t other = mover == i ? j : i;
        double angle = double(hash3(p_.seed, mover, other) >> 11) * 0x1.0p-53 * 2 *
                       std::numbers::pi;
        pos_[mover] = pos_[other] + Vec2{std::cos(angle), std::sin(angle)} * 1e-6;
    }

    Vec2 edge_force(EdgeIndex e, std::size_t v) const {
        auto [u, w] = ends_[e];
        if (!valive_[v] || v == u || v == w) return {0, 0};
        const Point a = pos_[u], b = pos_[w];
        const double fx = hw_[v] * p_.inner_fraction, fy = hh_[v] * p_.inner_fraction;
        const Point c = pos_[v];
        if (c.x + fx < std::min(a.x, b.x) || c.x - fx > std::max(a.x, b.x) ||
            c.y + fy < std::min(a.y, b.y) || c.y - fy > std::max(a.y, b.y))
            return {0, 0};
        int side = (hash3(p_.seed ^ 0xE5E5u, v, e) & 1) ? 1 : -1;
        return force_edge_repulsion(rect(v), {a, b}, p_.l_unit, p_.inner_fraction, side);
    }

    void accumulate_edge_repulsion() {
        const std::size_t n = pos_.size();
        for (EdgeIndex e = 0; e < ends_.size(); ++e) {
            if (!ealive_[e]) continue;
            for (std::size_t v = 0; v < n; ++v) {
                Vec2 f = edge_force(e, v);
                if (f.x != 0 || f.y != 0) disp_[v] += f * p_.alpha_e;
            }
        }
    }

    Removal select_vertex(const std::optional<Frame>& frame, ActiveForces active) const {
        auto sums = octant_sums(frame, active);
        std::optional<Removal> best;
        for (std::size_t v = 0; v < pos_.size(); ++v) {
            if (!valive_[v]) continue;
            double p = pressure_from_octants(sums[v]).pressure;
            double s = vertex_stress(p, g_.vertex(v).weight, std::size_t(degree_[v]), p_.c_deg);
            if (!best || s > best->stress ||
                (s == best->stress && better_vertex_tie(v, best->index)))
                best = Removal{RemovalKind::Vertex, v, s};
        }
        return *best;
    }

    bool better_vertex_tie(std::size_t a, std::size_t b) const {
        double wa = g_.vertex(a).weight, wb = g_.vertex(b).weight;
        if (wa != wb) return wa < wb;
        return rank_[a] < rank_[b];
    }

    Removal select_edge() const {
        std::vector<Segment> segs(ends_.size());
        for (EdgeIndex e = 0; e < ends_.size(); ++e)
            segs[e] = {pos_[ends_[e].first], pos_[ends_[e].second]};
        std::vector<double> crossers;
        std::optional<Removal> best;
        for (EdgeIndex e = 0; e < ends_.size(); ++e) {
            if (!ealive_[e]) continue;
            crossers.clear();
            for (EdgeIndex f = 0; f < ends_.size(); ++f) {
                if (f == e || !ealive_[f]) continue;
                if (ends_[f].first == ends_[e].first || ends_[f].first == ends_[e].second ||
                    ends_[f].second == ends_[e].first || ends_[f].second == ends_[e].second)
                    continue;
                if (segments_cross_properly(segs[e], segs[f])) crossers.push_back(g_.edge(f).weight);
            }
            double s = edge_stress(g_.edge(e).weight, crossers);
            if (!best || s > best->stress || (s == best->stress && better_edge_tie(e, best->index)))
                best = Removal{RemovalKind::Edge, e, s};
        }
        return *best;
    }

    bool better_edge_tie(EdgeIndex a, EdgeIndex b) const {
        const Edge& ea = g_.edge(a);
        const Edge& eb = g_.edge(b);
        if (ea.weight != eb.weight) return ea.weight < eb.weight;
        return std::tie(ea.src, ea.dst) < std::tie(eb.src, eb.dst);
    }

    const WeightedGraph& g_;
    const ForceParams& p_;
    Point center_;
    std::vector<Point> pos_;
    std::vector<double> hw_, hh_;
    std::vector<char> valive_, ealive_;
    std::vector<int> degree_;
    std::vector<unsigned char> adj_;
    std::vector<std::pair<std::size_t, std::size_t>> ends_;
    std::vector<std::size_t> rank_;
    std::vector<Vec2> disp_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Public stage wrappers

EquilibriumResult compute_equilibrium(const WeightedGraph& g, std::vector<Point> positions,
                                      const std::optional<Frame>& frame,
                                      const ForceParams& params, ActiveForces active,
                                      Point center) {
    if (positions.size() != g.vertex_count())
        throw std::invalid_argument("positions must cover every vertex");
    State s(g, std::move(positions), params, center);
    EquilibriumResult r;
    r.iterations = s.equilibrium(frame, active, &r.converged);
    r.positions = s.positions();
    return r;
}

bool removal_guard(const WeightedGraph& g, const std::vector<Point>& positions,
                   const ForceParams& params) {
    State s(g, positions, params, {});
    return s.guard();
}

RemovalOutcome removal_step(const WeightedGraph& g, const std::vector<Point>& positions,
                            const ForceParams& params, const std::optional<Frame>& frame,
                            ActiveForces active) {
    State s(g, positions, params, {});
    if (!s.guard()) throw std::logic_error("removal_step called while the guard does not hold");
    Removal r = s.select_removal(frame, active);
    RemovalOutcome out;
    out.kind = r.kind;
    out.id = s.describe(r);
    out.stress = r.stress;
    s.apply(r);
    out.graph = s.alive_subgraph();
    out.positions = s.alive_positions();
    return out;
}

double preprocess_keep_count(const WeightedGraph& g, const DrawingArea& area,
                             const ForceParams& params) {
    if (g.empty()) return 0;
    double hmin = g.vertex(0).height, wmin = g.vertex(0).width;
    for (const auto& v : g.vertices()) {
        hmin = std::min(hmin, v.height);
        wmin = std::min(wmin, v.width);
    }
    double lc = params.l_unit * params.c_pre;
    return area.height * area.width / ((lc + hmin) * (lc + wmin));
}

WeightedGraph preprocess_by_weight(const WeightedGraph& g, const DrawingArea& area,
                                   const ForceParams& params) {
    double n = preprocess_keep_count(g, area, params);
    std::size_t keep = std::size_t(std::ceil(n));
    if (g.vertex_count() <= keep) return g;
    std::vector<std::size_t> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        const auto& va = g.vertex(a);
        const auto& vb = g.vertex(b);
        if (va.weight != vb.weight) return va.weight > vb.weight;
        return va.id < vb.id;
    });
    std::set<std::string> kept;
    for (std::size_t i = 0; i < keep; ++i) kept.insert(g.vertex(order[i]).id);
    return induced_subgraph(g, kept);
}

// ---------------------------------------------------------------------------
// Pipeline

ForceResult run_force_pipeline(const WeightedGraph& input, const DrawingArea& area,
                               const ForceParams& params) {
    params.validate();
    if (!(area.width > 0 && area.height > 0))
        throw std::invalid_argument("drawing area must have positive extent");
    const auto t0 = std::chrono::steady_clock::now();
    ForceResult result;
    auto& log = result.log;

    WeightedGraph work = params.preprocess ? preprocess_by_weight(input, area, params) : input;
    if (params.preprocess) {
        std::ostringstream os;
        os << "preprocess: kept " << work.vertex_count() << " of " << input.vertex_count()
           << " vertices (N = " << preprocess_keep_count(input, area, params) << ")";
        log.push_back(os.str());
    }

    const Point center{area.width / 2, area.height / 2};
    std::vector<Point> init(work.vertex_count());
    {
        std::mt19937_64 rng(params.seed);
        auto uniform = [&] { return double(rng() >> 11) * 0x1.0p-53; };
        for (auto& q : init) q = {uniform() * area.width, uniform() * area.height};
    }
    State state(work, std::move(init), params, center);
    std::size_t iterations = 0;

    for (VertexIndex v = 0; v < work.vertex_count(); ++v) {
        const auto& vx = work.vertex(v);
        if (vx.width > area.width || vx.height > area.height) {
            log.push_back("vertex " + vx.id + " does not fit into the drawing area; dropped");
            state.remove_vertex(v);
        }
    }

    // One equilibrium, or two (without, then with Fe) in two-phase mode.
    ActiveForces last{};
    auto settle = [&](const std::optional<Frame>& frame, bool gravity) {
        bool conv = false;
        if (params.two_phase_equilibrium) {
            iterations += std::size_t(state.equilibrium(frame, {gravity, false}, &conv));
            if (!conv) log.push_back("equilibrium (phase 1) hit the iteration limit");
        }
        last = {gravity, true};
        iterations += std::size_t(state.equilibrium(frame, last, &conv));
        if (!conv) log.push_back("equilibrium hit the iteration limit");
    };

    auto removal_loop = [&](int step, const Frame& frame) {
        while (state.alive_vertex_count() > 0 && state.guard()) {
            Removal r = state.select_removal(frame, last);
            std::ostringstream os;
            os << "step " << step << " remove-"
               << (r.kind == RemovalKind::Vertex ? "vertex " : "edge ") << state.describe(r)
               << " stress=" << r.stress;
            log.push_back(os.str());
            state.apply(r);
        }
    };

    Frame frame{area.rect()};
    if (state.alive_vertex_count() > 0) {
        settle(std::nullopt, true);
        Rect bb = state.bounding_box();
        Frame initial{{bb.center, std::max(bb.width, area.width), std::max(bb.height, area.height)}};
        const bool gravity_later = !params.gravity_active_only_initially;
        for (int step = 1; step <= params.shrink_steps; ++step) {
            frame = shrink_frame(initial, area, step, params.shrink_steps);
            for (std::size_t i = 0; i < work.vertex_count(); ++i)
                if (state.vertex_alive(i)) {
                    Rect r = state.rect(i);
                    state.positions()[i] = push_inside(r.center, r.width, r.height, frame);
                }
            settle(frame, gravity_later);
            removal_loop(step, frame);
            if (state.alive_vertex_count() == 0) break;
            settle(frame, gravity_later);
        }
        // The last equilibrium may have re-introduced close pairs.
        removal_loop(params.shrink_steps + 1, frame);
    }
    result.final_frame = frame;

    // Map the final frame onto the drawing area.
    const Vec2 offset{-frame.bounds.left(), -frame.bounds.top()};
    result.subgraph = state.alive_subgraph();
    for (VertexIndex v = 0; v < work.vertex_count(); ++v)
        if (state.vertex_alive(v))
            result.layout.positions[work.vertex(v).id] = state.positions()[v] + offset;
    for (EdgeIndex e = 0; e < work.edge_count(); ++e) {
        if (!state.edge_alive(e)) continue;
        const Edge& ed = work.edge(e);
        DrawnEdge de;
        de.src = ed.src;
        de.dst = ed.dst;
        de.weight = ed.weight;
        de.geometry = {EdgeStyle::Straight,
                       {result.layout.positions[ed.src], result.layout.positions[ed.dst]}};
        result.layout.edges.push_back(std::move(de));
    }

    double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.metrics = compute_metrics(input, result.subgraph, result.layout, runtime);
    result.metrics.iterations = iterations;
    if (result.subgraph.empty())
        throw EmptyDrawingError("every vertex was removed; nothing fits the drawing area",
                                result.metrics);
    return result;
}

std::string check_final_layout(const WeightedGraph& g, const Layout& layout,
                               const DrawingArea& area, const ForceParams& params) {
    constexpr double tol = 1e-9;
    std::vector<Rect> rects;
    for (const auto& v : g.vertices()) {
        auto it = layout.positions.find(v.id);
        if (it == layout.positions.end()) return "vertex " + v.id + " has no position";
        rects.push_back({it->second, v.width, v.height});
        if (!area.rect().contains(rects.back(), tol))
            return "vertex " + v.id + " leaves the drawing area";
    }
    auto adjacent = [&](std::size_t i, std::size_t j) {
        return g.find_edge(g.vertex(i).id, g.vertex(j).id).has_value();
    };
    for (std::size_t i = 0; i < rects.size(); ++i)
        for (std::size_t j = i + 1; j < rects.size(); ++j) {
            if (rects_overlap(rects[i], rects[j]))
                return "vertices " + g.vertex(i).id + " and " + g.vertex(j).id + " overlap";
            double d = rect_distance(rects[i], rects[j]);
            double need = adjacent(i, j) ? params.adj_threshold() : params.nadj_threshold();
            if (d < need - tol)
                return "vertices " + g.vertex(i).id + " and " + g.vertex(j).id + " are too close";
        }
    return {};
}

}  // namespace areagraph::force
