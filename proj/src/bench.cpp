#include "areagraph/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace areagraph::bench {

namespace {

double max_density(GraphKind kind, std::size_t n) {
    return kind == GraphKind::Collab ? double(n - 1) / 2 : double(n - 1);
}

}  // namespace

void CorpusSpec::validate() const {
    if (count < 1) throw std::invalid_argument("count must be at least 1");
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (n_max != 0 && n_max < n) throw std::invalid_argument("n_max must be 0 or >= n");
    if (!(density() >= 0)) throw std::invalid_argument("edge_density must be >= 0");
    std::size_t top = std::max(n, n_max);
    if (edge_density && *edge_density > max_density(kind, top))
        throw std::invalid_argument("edge_density too high for the vertex count");
    if (weight_law == WeightLaw::PowerLaw && !(exponent > 1))
        throw std::invalid_argument("power-law exponent must be > 1");
    if (weight_law == WeightLaw::Uniform && !(uniform_lo > 0 && uniform_hi >= uniform_lo))
        throw std::invalid_argument("uniform range must satisfy 0 < lo <= hi");
    if (label_min < 1 || label_max < label_min)
        throw std::invalid_argument("label lengths must satisfy 1 <= min <= max");
    if (!(char_width > 0) || !(label_pad >= 0) || !(label_height > 0))
        throw std::invalid_argument("label dimensions must be positive");
    if (!(back_edge_fraction >= 0 && back_edge_fraction <= 1))
        throw std::invalid_argument("back_edge_fraction must be in [0, 1]");
    if (!(triad_probability >= 0 && triad_probability <= 1))
        throw std::invalid_argument("triad_probability must be in [0, 1]");
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    double uniform() { return double(g_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t n) { return std::size_t(uniform() * double(n)); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    // Pareto draw with minimum 1.
    double pareto(double exponent) { return std::pow(1.0 - uniform(), -1.0 / (exponent - 1.0)); }

private:
    std::mt19937_64 g_;
};

double draw_weight(Rng& rng, const CorpusSpec& s) {
    if (s.weight_law == WeightLaw::Uniform)
        return std::round(s.uniform_lo + rng.uniform() * (s.uniform_hi - s.uniform_lo));
    return std::floor(rng.pareto(s.exponent));
}

Vertex make_vertex(Rng& rng, const CorpusSpec& s, const std::string& id) {
    static const char* alphabet = "abcdefghijklmnopqrstuvwxyz0123456789+-*/=";
    Vertex v;
    v.id = id;
    int len = int(rng.between(std::size_t(s.label_min), std::size_t(s.label_max)));
    for (int i = 0; i < len; ++i) v.label.push_back(alphabet[rng.below(41)]);
    v.width = std::round((len * s.char_width + s.label_pad) * 1000.0) / 1000.0;
    v.height = s.label_height;
    return v;
}

std::size_t edge_target(Rng& rng, double density, std::size_t n) {
    double want = density * double(n);
    auto base = std::size_t(want);
    return base + (rng.uniform() < want - double(base) ? 1 : 0);
}

WeightedGraph collab_graph(Rng& rng, const CorpusSpec& s, std::size_t n) {
    WeightedGraph g(false);
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(make_vertex(rng, s, "v" + std::to_string(i)));
    // Preferential attachment with triad formation: each new vertex links to
    // a degree-proportional target, then mostly to that target's neighbours.
    std::set<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<std::size_t> urn;
    std::vector<std::size_t> degree(n, 0);
    const std::size_t m = n > 1 ? edge_target(rng, std::min(s.density(), max_density(s.kind, n)), n) : 0;
    auto link = [&](std::size_t a, std::size_t b) {
        if (a == b || !edges.insert({std::min(a, b), std::max(a, b)}).second) return false;
        adj[a].push_back(b);
        adj[b].push_back(a);
        ++degree[a], ++degree[b];
        urn.push_back(a);
        urn.push_back(b);
        return true;
    };
    for (std::size_t i = 1; i < n && edges.size() < m; ++i) {
        urn.push_back(i - 1);
        // Remaining edges spread evenly over the remaining vertices.
        std::size_t want = std::max<std::size_t>(1, edge_target(rng, double(m - edges.size()) / double(n - i), 1));
        std::size_t last = urn[rng.below(urn.size())];
        link(i, last);
        for (std::size_t k = 1, tries = 0; k < want && tries < 10 * want; ++tries) {
            std::size_t t = (rng.uniform() < s.triad_probability && !adj[last].empty())
                                ? adj[last][rng.below(adj[last].size())]
                                : urn[rng.below(urn.size())];
            if (link(i, t)) {
                ++k;
                last = t;
            }
        }
    }
    if (n > 1) urn.push_back(n - 1);
    std::size_t attempts = 0;
    while (edges.size() < m && attempts++ < 100 * m) link(urn[rng.below(urn.size())], urn[rng.below(urn.size())]);
    double mean_degree = 0;
    for (auto d : degree) mean_degree += double(d);
    mean_degree = std::max(1.0, mean_degree / double(n));
    for (std::size_t i = 0; i < n; ++i) {
        vs[i].weight = 1 + std::round(draw_weight(rng, s) * double(degree[i] + 1) / mean_degree);
        g.add_vertex(vs[i]);
    }
    for (auto [a, b] : edges) g.add_edge({vs[a].id, vs[b].id, draw_weight(rng, s)});
    return g;
}

WeightedGraph calc_graph(Rng& rng, const CorpusSpec& s, std::size_t n) {
    WeightedGraph g(true);
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(make_vertex(rng, s, "t" + std::to_string(i)));
    // Levels: vertex 0 alone on level 0, the rest spread over sqrt(n) levels.
    std::size_t levels = std::max<std::size_t>(1, std::size_t(std::sqrt(double(n))));
    std::vector<std::size_t> level(n, 0);
    std::vector<std::vector<std::size_t>> by_level(levels + 1);
    by_level[0].push_back(0);
    for (std::size_t i = 1; i < n; ++i) {
        level[i] = 1 + rng.below(levels);
        by_level[level[i]].push_back(i);
    }
    // Random vertex on the nearest non-empty level at or above `l`.
    auto pick_above = [&](std::size_t l) {
        while (by_level[l].empty()) --l;
        return by_level[l][rng.below(by_level[l].size())];
    };
    // A tree of first steps; further edges join nearby branches, since
    // different ways of calculating tend to meet at related terms.
    std::map<std::pair<std::size_t, std::size_t>, double> edges;
    std::vector<std::size_t> parent(n, 0);
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t i = 1; i < n; ++i) {
        parent[i] = pick_above(level[i] - 1);
        children[parent[i]].push_back(i);
        edges[{parent[i], i}] = 0;
    }
    // Random descendant `depth` tree steps below v, if any.
    auto descend = [&](std::size_t v, std::size_t depth) -> std::optional<std::size_t> {
        for (; depth > 0; --depth) {
            if (children[v].empty()) return std::nullopt;
            v = children[v][rng.below(children[v].size())];
        }
        return v;
    };
    auto relative = [&](std::size_t a, std::size_t up, std::size_t down) -> std::optional<std::size_t> {
        std::size_t x = a;
        for (std::size_t k = 0; k < up; ++k) {
            if (x == 0) return std::nullopt;
            x = parent[x];
        }
        return descend(x, down);
    };
    const std::size_t m = n > 1 ? std::max(n - 1, edge_target(rng, std::min(s.density(), max_density(s.kind, n)), n)) : 0;
    std::size_t back = std::size_t(std::round(s.back_edge_fraction * double(m)));
    std::size_t forward = m > back ? m - back : 0;
    std::size_t attempts = 0;
    // Further steps mostly lead one level down, sometimes two.
    while (edges.size() < forward && attempts++ < 100 * m) {
        std::size_t a = rng.below(n);
        std::size_t up = rng.uniform() < 0.7 ? 1 : 2;
        auto b = relative(a, up, up + (rng.uniform() < 0.8 ? 1 : 2));
        if (b && *b != a && level[*b] > level[a] && !edges.count({*b, a})) edges.try_emplace({a, *b}, 0);
    }
    attempts = 0;
    std::size_t added = 0;
    while (added < back && attempts++ < 100 * m) {
        std::size_t a = rng.below(n);
        if (level[a] < 2) continue;
        auto b = relative(a, 2, 1);
        if (!b || *b == 0 || *b == a || level[*b] >= level[a]) continue;
        if (edges.count({a, *b}) || edges.count({*b, a})) continue;
        edges[{a, *b}] = 0;
        ++added;
    }

    // Students walk from the start term; each step follows an edge in
    // proportion to its popularity. Weights count visits and traversals.
    std::vector<std::vector<std::pair<std::size_t, double>>> out(n);
    std::vector<double*> counter;
    for (auto& [key, w] : edges) {
        double pop = s.weight_law == WeightLaw::Uniform
                         ? s.uniform_lo + rng.uniform() * (s.uniform_hi - s.uniform_lo)
                         : rng.pareto(s.exponent);
        out[key.first].push_back({key.second, pop});
        counter.push_back(&w);
    }
    std::vector<std::vector<double*>> out_count(n);
    {
        std::size_t k = 0;
        for (auto& [key, w] : edges) out_count[key.first].push_back(counter[k++]);
    }
    const std::size_t students = 10 * n;
    const std::size_t max_steps = 4 * levels + 4;
    std::vector<double> visits(n, 0);
    for (std::size_t st = 0; st < students; ++st) {
        std::size_t v = 0;
        visits[0] += 1;
        for (std::size_t step = 0; step < max_steps; ++step) {
            if (out[v].empty() || (step > 0 && rng.uniform() < 0.1)) break;
            double total = 0;
            for (const auto& [t, pop] : out[v]) total += pop;
            double r = rng.uniform() * total;
            std::size_t k = 0;
            while (k + 1 < out[v].size() && r >= out[v][k].second) r -= out[v][k++].second;
            *out_count[v][k] += 1;
            v = out[v][k].first;
            visits[v] += 1;
        }
    }
    for (std::size_t i = 0; i < n; ++i) vs[i].weight = std::max(1.0, visits[i]);
    vs[0].weight = double(students);
    for (const auto& v : vs) g.add_vertex(v);
    for (const auto& [key, w] : edges) g.add_edge({vs[key.first].id, vs[key.second].id, std::max(1.0, w)});
    g.set_start(vs[0].id);
    return g;
}

}  // namespace

std::vector<WeightedGraph> generate_corpus(const CorpusSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    std::vector<WeightedGraph> out;
    for (std::size_t i = 0; i < spec.count; ++i) {
        std::size_t n = spec.n_max > spec.n ? rng.between(spec.n, spec.n_max) : spec.n;
        out.push_back(spec.kind == GraphKind::Collab ? collab_graph(rng, spec, n)
                                                     : calc_graph(rng, spec, n));
    }
    return out;
}

// --- oracle -------------------------------------------------------------------

bool shelf_packing_fits(const WeightedGraph& g, const DrawingArea& area, double gap) {
    std::vector<const Vertex*> items;
    for (const Vertex& v : g.vertices()) {
        if (v.width > area.width || v.height > area.height) return false;
        items.push_back(&v);
    }
    std::sort(items.begin(), items.end(), [](const Vertex* a, const Vertex* b) {
        return std::tie(b->height, b->width, a->id) < std::tie(a->height, a->width, b->id);
    });
    struct Row {
        double width;
        double height;
    };
    std::vector<Row> rows;
    // Items sorted by height: the first item of a row fixes its height.
    auto total_height = [&]() {
        double h = 0;
        for (const Row& r : rows) h += r.height;
        return h + gap * double(rows.empty() ? 0 : rows.size() - 1);
    };
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (total_height() > area.height) return false;
        if (i == items.size()) return true;
        const Vertex& v = *items[i];
        // Indices, not references: the recursion grows `rows`.
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (rows[k].width + gap + v.width > area.width) continue;
            rows[k].width += gap + v.width;
            bool ok = place(i + 1);
            rows[k].width -= gap + v.width;
            if (ok) return true;
        }
        rows.push_back({v.width, v.height});
        bool ok = place(i + 1);
        rows.pop_back();
        return ok;
    };
    return place(0);
}

FeasibilityCheck default_feasibility(const force::ForceParams& params) {
    return [params](const WeightedGraph& subset, const DrawingArea& area) {
        if (subset.empty()) return true;
        double gap = std::max(params.adj_threshold(), params.nadj_threshold());
        if (shelf_packing_fits(subset, area, gap)) return true;
        force::ForceParams p = params;
        p.preprocess = false;
        try {
            auto r = force::run_force_pipeline(subset, area, p);
            return r.subgraph.vertex_count() == subset.vertex_count() &&
                   force::check_final_layout(r.subgraph, r.layout, area, p).empty();
        } catch (const force::EmptyDrawingError&) {
            return false;
        }
    };
}

OracleResult oracle_optimal_subgraph(const WeightedGraph& g, const DrawingArea& area,
                                     const FeasibilityCheck& feasible) {
    const std::size_t n = g.vertex_count();
    if (n > 10) throw std::invalid_argument("oracle supports at most 10 vertices");
    // Subsets by descending weight; the first feasible one is optimal.
    std::vector<std::pair<double, std::uint32_t>> order;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) w += g.vertex(i).weight;
        order.emplace_back(w, mask);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    OracleResult res;
    for (auto [w, mask] : order) {
        std::set<std::string> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) keep.insert(g.vertex(i).id);
        WeightedGraph sub = induced_subgraph(g, keep);
        ++res.subsets_checked;
        if (!feasible(sub, area)) continue;
        res.best_weight = w;
        for (const Vertex& v : sub.vertices()) res.best_subset.push_back(v.id);
        break;
    }
    return res;
}

// --- experiments ----------------------------------------------------------------

ExperimentId parse_experiment(const std::string& name) {
    static const std::map<std::string, ExperimentId> names{
        {"cpre", ExperimentId::CPre},
        {"clen", ExperimentId::CLen},
        {"two_phase", ExperimentId::TwoPhase},
        {"threshold", ExperimentId::Threshold},
        {"crossing_min", ExperimentId::CrossingMin}};
    auto it = names.find(name);
    if (it == names.end()) throw std::invalid_argument("unknown experiment: " + name);
    return it->second;
}

std::string experiment_name(ExperimentId id) {
    switch (id) {
        case ExperimentId::CPre: return "cpre";
        case ExperimentId::CLen: return "clen";
        case ExperimentId::TwoPhase: return "two_phase";
        case ExperimentId::Threshold: return "threshold";
        case ExperimentId::CrossingMin: return "crossing_min";
    }
    return "";
}

namespace {

std::string num(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

struct Variant {
    std::string name;
    std::function<RunMetrics(const WeightedGraph&)> run;
};

RunMetrics run_force(const WeightedGraph& g, const DrawingArea& area, const force::ForceParams& p) {
    try {
        return force::run_force_pipeline(g, area, p).metrics;
    } catch (const force::EmptyDrawingError& e) {
        return e.metrics;
    }
}

std::vector<Variant> variants_for(const ExperimentConfig& c) {
    std::vector<Variant> out;
    auto grid = [&](std::vector<double> def) { return c.grid.empty() ? def : c.grid; };
    switch (c.id) {
        case ExperimentId::CPre:
            for (double v : grid({0.6, 0.7, 0.8})) {
                auto p = c.force;
                p.c_pre = v;
                out.push_back({"c_pre=" + num(v, 2),
                               [p, &c](const WeightedGraph& g) { return run_force(g, c.area, p); }});
            }
            break;
        case ExperimentId::CLen:
            for (double v : grid({0.8, 0.9, 1.0})) {
                auto p = c.force;
                p.c_len = v;
                out.push_back({"c_len=" + num(v, 2),
                               [p, &c](const WeightedGraph& g) { return run_force(g, c.area, p); }});
            }
            break;
        case ExperimentId::TwoPhase:
            for (bool two : {false, true}) {
                auto p = c.force;
                p.two_phase_equilibrium = two;
                out.push_back({two ? "two-phase" : "single-phase",
                               [p, &c](const WeightedGraph& g) { return run_force(g, c.area, p); }});
            }
            break;
        case ExperimentId::Threshold:
            for (double v : grid({0, 2, 5})) {
                auto p = c.layered;
                p.threshold = v;
                out.push_back({"threshold=" + num(v, 2), [p, &c](const WeightedGraph& g) {
                                   return layered::run_layered_pipeline(g, c.area, p).metrics;
                               }});
            }
            break;
        case ExperimentId::CrossingMin: {
            std::pair<const char*, layered::CrossingMethod> methods[] = {
                {"adjacent-exchange", layered::CrossingMethod::AdjacentExchange},
                {"adjacent-exchange-weighted", layered::CrossingMethod::AdjacentExchangeWeighted},
                {"median", layered::CrossingMethod::Median}};
            for (auto [name, m] : methods) {
                auto p = c.layered;
                p.crossing = m;
                out.push_back({name, [p, &c](const WeightedGraph& g) {
                                   return layered::run_layered_pipeline(g, c.area, p).metrics;
                               }});
            }
            break;
        }
    }
    return out;
}

WeightedGraph corpus_graph(const ExperimentConfig& c, std::uint64_t seed) {
    CorpusSpec s;
    s.seed = seed;
    bool calc = c.id == ExperimentId::Threshold || c.id == ExperimentId::CrossingMin;
    s.kind = calc ? GraphKind::Calc : GraphKind::Collab;
    s.n = c.n ? c.n : (c.id == ExperimentId::CPre ? 300 : calc ? 150 : 100);
    return generate_corpus(s).front();
}

}  // namespace

ExperimentTable run_table_experiment(const ExperimentConfig& config) {
    if (config.seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
    ExperimentTable t;
    auto variants = variants_for(config);
    std::vector<WeightedGraph> graphs;
    for (auto seed : config.seeds) graphs.push_back(corpus_graph(config, seed));
    for (const auto& v : variants) {
        t.variants.push_back(v.name);
        for (std::size_t i = 0; i < graphs.size(); ++i)
            t.rows.push_back({v.name, config.seeds[i], v.run(graphs[i])});
    }

    const bool crossings = config.id == ExperimentId::CrossingMin;
    std::ostringstream csv;
    csv << "experiment,variant,seed,input_vertices,retained_vertices,input_vertex_weight,"
           "retained_vertex_weight,input_edges,retained_edges,input_edge_weight,"
           "retained_edge_weight,crossings,crossing_weight,iterations";
    if (config.include_runtime) csv << ",runtime_s";
    csv << "\n";
    for (const auto& r : t.rows) {
        const auto& m = r.metrics;
        csv << experiment_name(config.id) << ',' << r.variant << ',' << r.seed << ','
            << m.input_vertices << ',' << m.retained_vertices << ',' << num(m.input_vertex_weight, 3)
            << ',' << num(m.retained_vertex_weight, 3) << ',' << m.input_edges << ','
            << m.retained_edges << ',' << num(m.input_edge_weight, 3) << ','
            << num(m.retained_edge_weight, 3) << ',' << m.crossings << ','
            << num(m.crossing_weight, 3) << ',' << m.iterations;
        if (config.include_runtime) csv << ',' << num(m.runtime_seconds, 3);
        csv << "\n";
    }
    t.csv = csv.str();

    std::ostringstream txt;
    txt << std::left << std::setw(28) << "variant" << std::right << std::setw(10) << "vertices"
        << std::setw(12) << "v-weight %" << std::setw(12) << "e-weight %";
    if (crossings) txt << std::setw(11) << "crossings" << std::setw(14) << "cross-weight";
    if (config.include_runtime) txt << std::setw(11) << "runtime s";
    txt << "\n";
    for (const auto& name : t.variants) {
        double nv = 0, vw = 0, ew = 0, cr = 0, cw = 0, rt = 0, k = 0;
        for (const auto& r : t.rows) {
            if (r.variant != name) continue;
            nv += double(r.metrics.retained_vertices);
            vw += r.metrics.retained_vertex_weight;
            ew += r.metrics.retained_edge_weight;
            cr += double(r.metrics.crossings);
            cw += r.metrics.crossing_weight;
            rt += r.metrics.runtime_seconds;
            k += 1;
        }
        double in_vw = 0, in_ew = 0;
        for (const auto& r : t.rows)
            if (r.variant == name) {
                in_vw += r.metrics.input_vertex_weight;
                in_ew += r.metrics.input_edge_weight;
            }
        txt << std::left << std::setw(28) << name << std::right << std::setw(10) << num(nv / k, 1)
            << std::setw(12) << num(in_vw > 0 ? 100 * vw / in_vw : 0, 1) << std::setw(12)
            << num(in_ew > 0 ? 100 * ew / in_ew : 0, 1);
        if (crossings) txt << std::setw(11) << num(cr / k, 2) << std::setw(14) << num(cw / k, 2);
        if (config.include_runtime) txt << std::setw(11) << num(rt / k, 3);
        txt << "\n";
    }
    if (config.id == ExperimentId::TwoPhase && t.variants.size() == 2) {
        double base = 0, two = 0;
        for (const auto& r : t.rows)
            (r.variant == t.variants[0] ? base : two) += r.metrics.retained_edge_weight;
        if (base > 0) txt << "edge weight change: " << num(100 * (two - base) / base, 1) << " %\n";
    }
    t.text = txt.str();
    return t;
}

}  // namespace areagraph::bench
