#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tgwa/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace tgwa;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = std::string("/tmp/tgwa_test_") + name;
    std::ofstream f(path);
    f << text;
    return path;
}

const char* kRank2Config = R"(
[algebra]
preset = "qwa2"
N = 10

[algebra.params]
q1 = "e^6"
q2 = "e"
l12 = "e"

[point]
preset = "n2"
lam = "lam"

[module]
rho = "rho"
mu = "mu"
window = 2
basis_a = [2, -2]
basis_b = [3, 2]
)";

const char* kRank1Config = R"(
[algebra]
preset = "qwa2"
N = 2

[algebra.params]
q1 = "transcendental"
q2 = "-q1^2"
l12 = "transcendental"

[point]
preset = "n2"
lam = "lam"

[module]
rho = "rho"
window = 3
)";

int run(const std::string& sub, const std::string& config_path, std::string& out,
        const std::string& in_path = "", const std::string& format = "text", long window = -1) {
    CliOptions opts;
    opts.subcommand = sub;
    opts.config_path = config_path;
    opts.in_path = in_path;
    opts.format = format;
    opts.window = window;
    std::ostringstream os, es;
    int code = run_cli(opts, os, es);
    out = os.str() + es.str();
    return code;
}

} // namespace

TEST_CASE("toml parser basics") {
    TomlTable t = parse_toml("[a]\nx = 3\ny = \"hi # there\" # comment\n[b.c]\nz = [1, -2]\n");
    CHECK(t["a"]["x"].as_int() == 3);
    CHECK(t["a"]["y"].as_string() == "hi # there");
    CHECK(t["b.c"]["z"].as_ints() == std::vector<long>({1, -2}));
    CHECK_THROWS_AS(parse_toml("nonsense\n"), error);
}

TEST_CASE("classify subcommand") {
    std::string cfg = write_temp("r2.toml", kRank2Config);
    std::string out;
    CHECK(run("classify", cfg, out) == 0);
    CHECK(out == "N2_RANK2\n");
}

TEST_CASE("classify n_0 prints N0") {
    std::string cfg = write_temp("n0.toml", R"(
[algebra]
preset = "qwa2"
N = 1
[algebra.params]
q1 = "transcendental"
q2 = "transcendental"
l12 = "transcendental"
[point]
preset = "n0"
[module]
window = 2
)");
    std::string out;
    CHECK(run("classify", cfg, out) == 0);
    CHECK(out == "N0\n");
}

TEST_CASE("missing config is a config error") {
    std::string out;
    CHECK(run("classify", "/nonexistent/nope.toml", out) == 3);
}

TEST_CASE("precondition failures exit with code 4") {
    // l12 transcendental at a point needing the torus: NotRootOfUnity
    std::string cfg = write_temp("bad.toml", R"(
[algebra]
preset = "qwa2"
N = 3
[algebra.params]
q1 = "e"
q2 = "e"
l12 = "transcendental"
[point]
preset = "n1"
lam = "lam"
[module]
window = 2
)");
    std::string out;
    CHECK(run("build", cfg, out) == 4);
}

TEST_CASE("build then verify round-trips byte-stably") {
    std::string cfg = write_temp("r2b.toml", kRank2Config);
    std::string module_json;
    REQUIRE(run("build", cfg, module_json) == 0);
    std::string mod_path = write_temp("module.json", module_json);

    std::string rep1, rep2;
    CHECK(run("verify", cfg, rep1, mod_path, "json", 2) == 0);
    CHECK(run("verify", cfg, rep2, mod_path, "json", 2) == 0);
    CHECK(rep1 == rep2);
    // and the loaded-module report agrees with the in-process one
    std::string rep3;
    CHECK(run("verify", cfg, rep3, "", "json", 2) == 0);
    CHECK(rep1 == rep3);
    // byte-stable build output
    std::string module_json2;
    REQUIRE(run("build", cfg, module_json2) == 0);
    CHECK(module_json == module_json2);
}

TEST_CASE("diagram of the rank-one figure: X1 chains feeding a diagonal wrap") {
    std::string cfg = write_temp("r1.toml", kRank1Config);
    std::string dot;
    REQUIRE(run("diagram", cfg, dot, "", "dot", 2) == 0);
    // a = 4 columns, j in [-2, 2]: 20 nodes
    size_t nodes = 0, pos = 0;
    while ((pos = dot.find("tooltip", pos)) != std::string::npos) {
        ++nodes;
        pos += 1;
    }
    CHECK(nodes == 20);
    // X1 edges: solid; X2 edges: double-styled
    size_t solid = 0, dbl = 0;
    pos = 0;
    while ((pos = dot.find("[style=solid]", pos)) != std::string::npos) {
        ++solid;
        pos += 1;
    }
    pos = 0;
    while ((pos = dot.find("black:invis:black", pos)) != std::string::npos) {
        ++dbl;
        pos += 1;
    }
    // 3 interior X1 edges per row x 5 rows, plus wrap edges from the last
    // column landing back in the window (j-b = j+2 inside [-2,2] for j <= 0)
    CHECK(solid == 18);
    // X2 edges move j -> j+1: present whenever j+1 <= 2: 4 per column x 4 columns
    CHECK(dbl == 16);
}

TEST_CASE("diagram of the q1=q2 rank-two case: a single cycle") {
    std::string cfg = write_temp("cyc.toml", R"(
[algebra]
preset = "qwa2"
N = 3
[algebra.params]
q1 = "e"
q2 = "e"
l12 = "-1"
[point]
preset = "n2"
lam = "lam"
[module]
rho = "rho"
mu = "mu"
window = 2
)");
    std::string dot;
    REQUIRE(run("diagram", cfg, dot, "", "dot", 2) == 0);
    // d1 = 3, d2 = 1: three nodes in one cycle under X1
    size_t nodes = 0, pos = 0;
    while ((pos = dot.find("tooltip", pos)) != std::string::npos) {
        ++nodes;
        pos += 1;
    }
    CHECK(nodes == 3);
}

TEST_CASE("verify flags the proper-inner-break fixture with exit code 2") {
    std::string cfg = write_temp("pib.toml", R"(
[algebra]
preset = "qwa2"
N = 3
[algebra.params]
q1 = "e"
q2 = "e"
l12 = "-e^2"
[point]
preset = "n0"
[module]
fixture = "pib_n0"
window = 2
)");
    std::string out;
    CHECK(run("verify", cfg, out, "", "text", 2) == 2);
    CHECK(out.find("degree (0,1)") != std::string::npos);
    CHECK(out.find("relations: ok") != std::string::npos);
    CHECK(out.find("simplicity: simple") != std::string::npos);
}

TEST_CASE("oracle build flag") {
    std::string cfg = write_temp("r2o.toml", kRank2Config);
    CliOptions opts;
    opts.subcommand = "verify";
    opts.config_path = cfg;
    opts.use_oracle = true;
    opts.window = 2;
    std::ostringstream os, es;
    CHECK(run_cli(opts, os, es) == 0);
}
