#include "areagraph/config.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace areagraph {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view v) {
    std::string s(v);
    char* end = nullptr;
    errno = 0;
    double d = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE) throw ConfigError("not a number: " + s);
    return d;
}

long long to_int(std::string_view v) {
    long long out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("not an integer: " + std::string(v));
    return out;
}

bool to_bool(std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("not a boolean: " + std::string(v));
}

template <class E>
E to_enum(std::string_view v, const std::map<std::string, E, std::less<>>& names) {
    auto it = names.find(v);
    if (it == names.end()) {
        std::string all;
        for (const auto& [k, e] : names) all += (all.empty() ? "" : ", ") + k;
        throw ConfigError("expected one of " + all + ", got " + std::string(v));
    }
    return it->second;
}

using Setter = std::function<void(Config&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    using namespace layered;
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        t["area"] = [](Config& c, std::string_view v) { c.area = parse_area(v); };
#define F_DBL(name) t[#name] = [](Config& c, std::string_view v) { c.force.name = to_double(v); }
#define F_INT(name) t[#name] = [](Config& c, std::string_view v) { c.force.name = int(to_int(v)); }
#define F_BOOL(name) t[#name] = [](Config& c, std::string_view v) { c.force.name = to_bool(v); }
#define L_DBL(name) t[#name] = [](Config& c, std::string_view v) { c.layered.name = to_double(v); }
#define L_INT(name) t[#name] = [](Config& c, std::string_view v) { c.layered.name = int(to_int(v)); }
#define L_BOOL(name) t[#name] = [](Config& c, std::string_view v) { c.layered.name = to_bool(v); }
#define B_DBL(name) \
    t["bezier_" #name] = [](Config& c, std::string_view v) { c.bezier.name = to_double(v); }
#define B_INT(name) \
    t["bezier_" #name] = [](Config& c, std::string_view v) { c.bezier.name = int(to_int(v)); }
        F_DBL(l_unit);
        F_DBL(alpha_r);
        F_DBL(alpha_a);
        F_DBL(alpha_g);
        F_DBL(alpha_e);
        F_DBL(alpha_f);
        F_DBL(c_deg);
        F_DBL(c_len);
        F_DBL(l_adj);
        F_DBL(l_nadj);
        F_DBL(c_pre);
        F_BOOL(preprocess);
        F_DBL(inner_fraction);
        F_INT(shrink_steps);
        F_DBL(cooling);
        F_DBL(eps_move);
        F_INT(max_iterations);
        F_DBL(max_step_factor);
        F_BOOL(gravity_active_only_initially);
        F_BOOL(two_phase_equilibrium);
        t["seed"] = [](Config& c, std::string_view v) {
            long long s = to_int(v);
            if (s < 0) throw ConfigError("seed must be non-negative");
            c.force.seed = std::uint64_t(s);
        };
        L_DBL(layer_gap);
        L_DBL(gap_vv);
        L_DBL(gap_ee);
        L_DBL(gap_parallel);
        L_DBL(crossing_budget);
        L_DBL(stroke_coeff);
        L_DBL(stroke_exponent);
        L_DBL(stroke_min);
        L_DBL(stroke_max);
        L_BOOL(bezier);
        L_DBL(threshold);
        L_INT(crossing_rounds);
        L_BOOL(reinsert);
        L_INT(coordinate_sweeps);
        L_INT(relax_iterations);
        t["exact_node_budget"] = [](Config& c, std::string_view v) {
            long long b = to_int(v);
            if (b < 1) throw ConfigError("exact_node_budget must be positive");
            c.layered.exact_node_budget = std::size_t(b);
        };
        t["ports"] = [](Config& c, std::string_view v) {
            c.layered.ports = to_enum<PortMode>(v, {{"single", PortMode::Single},
                                                    {"per-edge", PortMode::PerEdge}});
        };
        t["cycle_mode"] = [](Config& c, std::string_view v) {
            c.layered.cycle_mode = to_enum<CycleMode>(v, {{"exact", CycleMode::Exact},
                                                          {"heuristic", CycleMode::Heuristic}});
        };
        t["cycle_objective"] = [](Config& c, std::string_view v) {
            c.layered.cycle_objective = to_enum<CycleObjective>(
                v, {{"count", CycleObjective::Count}, {"weight", CycleObjective::Weight}});
        };
        t["layering"] = [](Config& c, std::string_view v) {
            c.layered.layering = to_enum<LayeringMethod>(
                v, {{"coffman_graham", LayeringMethod::CoffmanGraham},
                    {"list_scheduling", LayeringMethod::ListScheduling},
                    {"min_layers", LayeringMethod::MinLayers}});
        };
        t["crossing"] = [](Config& c, std::string_view v) {
            c.layered.crossing = to_enum<CrossingMethod>(
                v, {{"adjx", CrossingMethod::AdjacentExchange},
                    {"adjxw", CrossingMethod::AdjacentExchangeWeighted},
                    {"median", CrossingMethod::Median}});
        };
        t["crossing_convention"] = [](Config& c, std::string_view v) {
            c.layered.crossing_convention = to_enum<CrossingWeight>(
                v, {{"product", CrossingWeight::Product}, {"sum", CrossingWeight::Sum}});
        };
        B_DBL(attract_factor);
        B_DBL(proximity_factor);
        B_INT(samples);
        B_INT(max_iterations);
        B_DBL(cooling);
        B_DBL(eps_move);
        B_DBL(step_weight);
        B_DBL(max_step);
#undef F_DBL
#undef F_INT
#undef F_BOOL
#undef L_DBL
#undef L_INT
#undef L_BOOL
#undef B_DBL
#undef B_INT
        return t;
    }();
    return table;
}

}  // namespace

DrawingArea parse_area(std::string_view text) {
    auto x = text.find_first_of("xX");
    if (x == std::string_view::npos) throw ConfigError("area must look like WxH, got " + std::string(text));
    DrawingArea a{to_double(trim(text.substr(0, x))), to_double(trim(text.substr(x + 1)))};
    if (!(a.width > 0 && a.height > 0)) throw ConfigError("area must be positive");
    return a;
}

void set_config_value(Config& c, std::string_view key, std::string_view value) {
    const auto& t = setters();
    auto it = t.find(key);
    if (it == t.end()) throw ConfigError("unknown key: " + std::string(key));
    try {
        it->second(c, value);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

void apply_config_text(Config& c, std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto hash = line.find('#');
        std::string body = trim(line.substr(0, hash));
        if (body.empty()) continue;
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        try {
            set_config_value(c, trim(std::string_view(body).substr(0, eq)),
                             trim(std::string_view(body).substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(Config& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        apply_config_text(c, ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, f] : setters()) keys.push_back(k);
    return keys;
}

}  // namespace areagraph
