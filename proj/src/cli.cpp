#include "areagraph/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "areagraph/bench.hpp"
#include "areagraph/bezier_post.hpp"
#include "areagraph/config.hpp"
#include "areagraph/force_layout.hpp"
#include "areagraph/layered_layout.hpp"
#include "areagraph/metrics.hpp"
#include "areagraph/render.hpp"

namespace areagraph {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

struct CommonOptions {
    std::string input;
    std::string area;
    std::string config;
    std::uint64_t seed = 1;
    std::string svg;
    std::string metrics;
    std::string log;
    bool timing = false;
};

void add_common(CLI::App* app, CommonOptions& o, bool with_input) {
    if (with_input) app->add_option("input", o.input, "Graph file")->required();
    app->add_option("--area", o.area, "Drawing area WxH in cm")->default_str("29.7x21");
    app->add_option("--config", o.config, "Config file with key = value lines");
    app->add_option("--seed", o.seed, "Random seed")->default_str("1");
    app->add_option("--svg", o.svg, "Write the drawing as SVG");
    app->add_option("--metrics", o.metrics, "Write metrics as one JSON line");
    app->add_option("--log", o.log, "Write the run log");
    app->add_flag("--timing", o.timing, "Include runtimes in metrics and tables");
}

Config base_config(const CommonOptions& o, const CLI::App* app) {
    Config c;
    if (!o.config.empty()) apply_config_file(c, o.config);
    if (app->count("--area")) c.area = parse_area(o.area);
    if (app->count("--seed")) c.force.seed = o.seed;
    return c;
}

void emit(const CommonOptions& o, const RunMetrics& m, const std::vector<std::string>& log,
          const std::string& svg, std::ostream& out) {
    if (!o.svg.empty()) write_file(o.svg, svg);
    if (!o.metrics.empty()) write_file(o.metrics, metrics_to_json(m, o.timing) + "\n");
    if (!o.log.empty()) {
        std::string text;
        for (const auto& line : log) text += line + "\n";
        write_file(o.log, text);
    }
    out << metrics_to_text(m, o.timing);
}

int cmd_force(const CommonOptions& o, const CLI::App* app, double lunit, bool bezier,
              bool two_phase, bool no_preprocess, std::ostream& out, std::ostream& err) {
    Config c = base_config(o, app);
    if (app->count("--lunit")) c.force.l_unit = lunit;
    if (two_phase) c.force.two_phase_equilibrium = true;
    if (no_preprocess) c.force.preprocess = false;
    WeightedGraph g = read_graph_file(o.input);
    if (g.directed()) throw InputError("force mode needs an undirected graph");
    const auto t0 = std::chrono::steady_clock::now();
    force::ForceResult r;
    try {
        r = force::run_force_pipeline(g, c.area, c.force);
    } catch (const force::EmptyDrawingError& e) {
        err << "error: " << e.what() << "\n";
        if (!o.metrics.empty()) write_file(o.metrics, metrics_to_json(e.metrics, o.timing) + "\n");
        return kExitEmpty;
    }
    Layout layout = r.layout;
    RunMetrics m = r.metrics;
    if (bezier) {
        bezier::BezierParams bp = c.bezier;
        bp.l_unit = c.force.l_unit;
        bp.bounds = c.area.rect();
        bezier::RefineReport rep;
        layout = bezier::refine_curves(r.layout, r.subgraph, bp, &rep);
        for (const auto& id : rep.curved) r.log.push_back("curve " + id);
        for (const auto& id : rep.uncleared) r.log.push_back("curve-uncleared " + id);
        for (const auto& id : rep.reverted) r.log.push_back("curve-reverted " + id);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t it = m.iterations;
        m = compute_metrics(g, r.subgraph, layout, secs);
        m.iterations = it;
    }
    emit(o, m, r.log, render_svg(layout, r.subgraph, c.area), out);
    return kExitOk;
}

int cmd_layered(const CommonOptions& o, const CLI::App* app, const std::string& style,
                double threshold, const std::string& crossing, std::ostream& out,
                std::ostream& err) {
    Config c = base_config(o, app);
    if (app->count("--style")) {
        if (style == "single-port") {
            c.layered.ports = layered::PortMode::Single;
            c.layered.bezier = false;
        } else if (style == "multi-port") {
            c.layered.ports = layered::PortMode::PerEdge;
            c.layered.bezier = false;
        } else {
            c.layered.bezier = true;
        }
    }
    if (app->count("--threshold")) c.layered.threshold = threshold;
    if (app->count("--crossing")) set_config_value(c, "crossing", crossing);
    WeightedGraph g = read_graph_file(o.input, true);
    if (!g.directed()) throw InputError("layered mode needs a directed graph");
    layered::LayeredResult r;
    try {
        r = layered::run_layered_pipeline(g, c.area, c.layered);
    } catch (const layered::LayeredError& e) {
        err << "error: " << e.what() << "\n";
        return kExitEmpty;
    }
    for (const auto& [a, b] : r.reverted) r.log.push_back("reverted " + a + "-" + b);
    emit(o, r.metrics, r.log, render_svg(r.layout, r.subgraph, c.area), out);
    return kExitOk;
}

std::string indexed_path(const std::string& path, std::size_t i) {
    auto dot = path.find_last_of('.');
    auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "-" + std::to_string(i);
    return path.substr(0, dot) + "-" + std::to_string(i) + path.substr(dot);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heavy-subgraph drawings inside a fixed area", "areagraph"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    CommonOptions fo, lo, bo;
    double lunit = 2.0;
    bool fbezier = false, two_phase = false, no_pre = false;
    auto* force_cmd = app.add_subcommand("force", "Force-directed drawing of an undirected graph");
    add_common(force_cmd, fo, true);
    force_cmd->add_option("--lunit", lunit, "Desired edge length in cm");
    force_cmd->add_flag("--bezier", fbezier, "Curve edges that pass through vertices");
    force_cmd->add_flag("--two-phase", two_phase, "Each equilibrium first without edge repulsion");
    force_cmd->add_flag("--no-preprocess", no_pre, "Keep light vertices");

    std::string style = "single-port", crossing = "adjx";
    double threshold = 0;
    auto* layered_cmd = app.add_subcommand("layered", "Layered drawing of a directed graph");
    add_common(layered_cmd, lo, true);
    layered_cmd->add_option("--style", style, "Edge style")
        ->check(CLI::IsMember({"single-port", "multi-port", "bezier"}));
    layered_cmd->add_option("--threshold", threshold, "Drop vertices and edges lighter than this");
    layered_cmd->add_option("--crossing", crossing, "Crossing minimization")
        ->check(CLI::IsMember({"adjx", "adjxw", "median"}));

    bench::CorpusSpec spec;
    std::string kind = "collab", weights = "powerlaw", gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic graphs");
    gen_cmd->add_option("--kind", kind, "Graph kind")->check(CLI::IsMember({"collab", "calc"}));
    gen_cmd->add_option("--n", spec.n, "Vertex count");
    gen_cmd->add_option("--n-max", spec.n_max, "Upper vertex count (0: fixed)");
    gen_cmd->add_option("--count", spec.count, "Number of graphs");
    gen_cmd->add_option("--seed", spec.seed, "Random seed");
    double density = 0;
    auto* density_opt = gen_cmd->add_option("--density", density, "Edges per vertex (default 2.7 collab, 1.5 calc)");
    gen_cmd->add_option("--weights", weights, "Weight law")
        ->check(CLI::IsMember({"powerlaw", "uniform"}));
    gen_cmd->add_option("--exponent", spec.exponent, "Power-law exponent");
    gen_cmd->add_option("--uniform-lo", spec.uniform_lo, "Uniform weight minimum");
    gen_cmd->add_option("--uniform-hi", spec.uniform_hi, "Uniform weight maximum");
    gen_cmd->add_option("--back-edges", spec.back_edge_fraction, "Fraction of back edges (calc)");
    gen_cmd->add_option("--out", gen_out, "Output file; numbered when --count > 1");

    std::string experiment, grid_text, csv_out;
    std::size_t seeds = 20, bench_n = 0;
    auto* bench_cmd = app.add_subcommand("bench", "Run a table experiment");
    bench_cmd->add_option("experiment", experiment, "cpre, clen, two_phase, threshold or crossing_min")
        ->required()
        ->check(CLI::IsMember({"cpre", "clen", "two_phase", "threshold", "crossing_min"}));
    add_common(bench_cmd, bo, false);
    bench_cmd->add_option("--seeds", seeds, "Seeds 1..N");
    bench_cmd->add_option("--grid", grid_text, "Comma-separated grid values");
    bench_cmd->add_option("--n", bench_n, "Vertex count (0: experiment default)");
    bench_cmd->add_option("--csv", csv_out, "Write per-seed rows as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (*force_cmd) return cmd_force(fo, force_cmd, lunit, fbezier, two_phase, no_pre, out, err);
        if (*layered_cmd) return cmd_layered(lo, layered_cmd, style, threshold, crossing, out, err);
        if (*gen_cmd) {
            spec.kind = kind == "calc" ? bench::GraphKind::Calc : bench::GraphKind::Collab;
            if (density_opt->count()) spec.edge_density = density;
            spec.weight_law = weights == "uniform" ? bench::WeightLaw::Uniform : bench::WeightLaw::PowerLaw;
            auto graphs = bench::generate_corpus(spec);
            for (std::size_t i = 0; i < graphs.size(); ++i) {
                if (gen_out.empty())
                    out << serialize_graph(graphs[i]);
                else
                    write_graph_file(graphs[i], graphs.size() == 1 ? gen_out : indexed_path(gen_out, i));
            }
            return kExitOk;
        }
        if (*bench_cmd) {
            Config c = base_config(bo, bench_cmd);
            bench::ExperimentConfig ec;
            ec.id = bench::parse_experiment(experiment);
            for (std::size_t s = 1; s <= seeds; ++s) ec.seeds.push_back(s);
            std::stringstream ss(grid_text);
            for (std::string tok; std::getline(ss, tok, ',');) {
                try {
                    std::size_t used = 0;
                    ec.grid.push_back(std::stod(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::logic_error&) {
                    throw InputError("bad grid value: " + tok);
                }
            }
            ec.area = c.area;
            ec.force = c.force;
            ec.layered = c.layered;
            ec.n = bench_n;
            ec.include_runtime = bo.timing;
            auto table = bench::run_table_experiment(ec);
            if (!csv_out.empty()) write_file(csv_out, table.csv);
            out << table.text;
            return kExitOk;
        }
    } catch (const std::exception& e) {
        // Parse errors, bad configs, unreadable files and invalid parameters.
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace areagraph
