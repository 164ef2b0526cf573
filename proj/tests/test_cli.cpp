#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "areagraph/cli.hpp"
#include "areagraph/graph.hpp"

using namespace areagraph;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "areagraph");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("areagraph-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content = "") const {
        auto p = path / name;
        if (!content.empty()) std::ofstream(p) << content;
        return p.string();
    }
};

const char* kSmall =
    "graph undirected\nv a 5 1.5 0.5 Ada\nv b 3 1.5 0.5 Bo\nv c 1 1.5 0.5 Cy\ne a b 2\ne b c 1\n";
const char* kDag =
    "graph directed\nv s 5 1.5 0.5\nv a 3 1.5 0.5\nv b 1 1.5 0.5\ne s a 2\ne a b 1\ne s b 1\nstart s\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
    TempDir t;
    CHECK(cli({}).code == kExitInputError);
    CHECK(cli({"force", t.file("missing.txt")}).code == kExitInputError);
    auto bad = t.file("bad.txt", "graph undirected\nv a x 1 1\n");
    auto r = cli({"force", bad});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(cli({"layered", t.file("u.txt", kSmall)}).code == kExitInputError);
    CHECK(cli({"force", t.file("d.txt", kDag)}).code == kExitInputError);
    CHECK(cli({"force", t.file("s.txt", kSmall), "--area", "nonsense"}).code == kExitInputError);
    CHECK(cli({"force", t.file("s2.txt", kSmall), "--area", "0.5x0.5"}).code == kExitEmpty);
    CHECK(cli({"layered", t.file("d2.txt", kDag), "--area", "10x0.2"}).code == kExitEmpty);
}

TEST_CASE("help lists defaults") {
    auto r = cli({"force", "--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("--lunit") != std::string::npos);
    CHECK(r.out.find("29.7x21") != std::string::npos);
}

TEST_CASE("force run writes svg, metrics and log") {
    TempDir t;
    auto in = t.file("g.txt", kSmall);
    auto svg = t.file("out.svg"), metrics = t.file("m.json"), log = t.file("run.log");
    auto r = cli({"force", in, "--svg", svg, "--metrics", metrics, "--log", log, "--seed", "7"});
    REQUIRE(r.code == kExitOk);
    CHECK(slurp(svg).find("<svg") != std::string::npos);
    CHECK(slurp(metrics).find("\"retained_vertices\"") != std::string::npos);
    CHECK(slurp(metrics).find("runtime") == std::string::npos);
    CHECK(r.out.find("%") != std::string::npos);
    auto first = slurp(svg);
    REQUIRE(cli({"force", in, "--svg", svg, "--seed", "7"}).code == kExitOk);
    CHECK(slurp(svg) == first);
    REQUIRE(cli({"force", in, "--metrics", metrics, "--timing", "--bezier"}).code == kExitOk);
    CHECK(slurp(metrics).find("runtime") != std::string::npos);
}

TEST_CASE("layered styles") {
    TempDir t;
    auto in = t.file("d.txt", kDag);
    auto svg = t.file("out.svg"), metrics = t.file("m.json");
    REQUIRE(cli({"layered", in, "--svg", svg, "--style", "bezier"}).code == kExitOk);
    CHECK(slurp(svg).find(" C") != std::string::npos);
    REQUIRE(cli({"layered", in, "--svg", svg, "--style", "multi-port", "--crossing", "adjxw",
                 "--metrics", metrics, "--threshold", "0"})
                .code == kExitOk);
    CHECK(slurp(metrics).find("crossing_weight") != std::string::npos);
    CHECK(cli({"layered", in, "--style", "wavy"}).code == kExitInputError);
}

TEST_CASE("config file overrides") {
    TempDir t;
    auto in = t.file("g.txt", kSmall);
    auto cfg = t.file("c.cfg", "l_unit = 3\narea = 12x8\n");
    CHECK(cli({"force", in, "--config", cfg}).code == kExitOk);
    auto broken = t.file("b.cfg", "lunit = 3\n");
    auto r = cli({"force", in, "--config", broken});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("unknown key") != std::string::npos);
}

TEST_CASE("gen writes graphs") {
    TempDir t;
    auto r = cli({"gen", "--kind", "calc", "--n", "107", "--seed", "1"});
    REQUIRE(r.code == kExitOk);
    auto g = parse_graph(r.out);
    CHECK(g.vertex_count() == 107);
    CHECK(g.directed());
    CHECK(g.start().has_value());
    auto out = t.file("c.txt");
    REQUIRE(cli({"gen", "--kind", "collab", "--n", "30", "--count", "3", "--out", out}).code == kExitOk);
    for (int i = 0; i < 3; ++i)
        CHECK(fs::exists(t.path / ("c-" + std::to_string(i) + ".txt")));
    CHECK(cli({"gen", "--n", "0"}).code == kExitInputError);
    CHECK(cli({"gen", "--kind", "tree"}).code == kExitInputError);
}

TEST_CASE("bench writes one csv row per variant and seed") {
    TempDir t;
    auto csv = t.file("tp.csv");
    REQUIRE(cli({"bench", "two_phase", "--seeds", "20", "--csv", csv}).code == kExitOk);
    auto text = slurp(csv);
    std::size_t lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == 41);  // header + 2 x 20
    REQUIRE(cli({"bench", "two_phase", "--seeds", "20", "--csv", csv}).code == kExitOk);
    CHECK(slurp(csv) == text);
    CHECK(cli({"bench", "cpre", "--grid", "0.6,abc"}).code == kExitInputError);
    CHECK(cli({"bench", "unknown"}).code == kExitInputError);
}

}
