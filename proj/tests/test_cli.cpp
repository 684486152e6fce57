#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "sinr/generate.hpp"
#include "sinr/scenario.hpp"

using namespace sinr;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/sinrbatch_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

size_t count_lines(const std::string& s) {
    size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

const char* kTinyScenario = R"({
  "alpha": 2,
  "beta": "2",
  "noise": "0.25",
  "dimension": 1,
  "transmitters": [{"pos": ["0"], "power": "1"}],
  "receivers": [["1"]]
})";

}  // namespace

TEST_CASE("run 1d-uniform over the single-transmitter scenario") {
    const std::string path = write_temp("tiny.json", kTinyScenario);
    auto res = cli({"run", "--engine", "1d-uniform", "--scenario", path, "--backend", "exact"});
    CHECK(res.code == 0);
    CHECK(res.out == "index,x,y,engine,candidate,quantity,verdict,flags\n"
                     "0,1,,1d-uniform,0,4,Hear,\n");
}

TEST_CASE("jsonl output mirrors the csv fields") {
    const std::string path = write_temp("tiny.json", kTinyScenario);
    auto res = cli({"run", "--engine", "oracle", "--scenario", path, "--out", "jsonl"});
    CHECK(res.code == 0);
    CHECK(res.out.find("\"engine\":\"oracle\"") != std::string::npos);
    CHECK(res.out.find("\"verdict\":\"Hear\"") != std::string::npos);
    CHECK(res.out.find("\"candidate\":0") != std::string::npos);
}

TEST_CASE("ptas metadata reports k and gamma") {
    GenParams gp;
    gp.n = 16;
    gp.m = 16;
    gp.dim = 2;
    gp.seed = 5;
    const std::string path = write_temp("ptas.json", scenario_to_json(generate_scenario(gp)));
    auto res = cli({"run", "--engine", "ptas", "--eps", "0.1", "--scenario", path});
    CHECK(res.code == 0);
    CHECK(res.err.find("k=12") != std::string::npos);
    CHECK(res.err.find("gamma=1.0718") != std::string::npos);
}

TEST_CASE("malformed scenario and receiver-on-transmitter exit 2") {
    const std::string bad = write_temp("bad.json", "{ not json");
    CHECK(cli({"run", "--engine", "oracle", "--scenario", bad}).code == 2);

    const std::string conflict = write_temp("conflict.json", R"({
      "alpha": 2, "beta": "2", "noise": "0.1", "dimension": 1,
      "transmitters": [{"pos": ["0.5"], "power": "1"}],
      "receivers": [["0.25"], ["0.5"]]
    })");
    auto res = cli({"run", "--engine", "oracle", "--scenario", conflict});
    CHECK(res.code == 2);
    CHECK(res.err.find("receiver 1") != std::string::npos);

    CHECK(cli({"run", "--engine", "oracle", "--scenario", "/nonexistent/path.json"}).code == 2);
}

TEST_CASE("engine mismatch exits 3") {
    const std::string path = write_temp("tiny.json", kTinyScenario);
    CHECK(cli({"run", "--engine", "grid-tx", "--scenario", path}).code == 3);
    CHECK(cli({"run", "--engine", "approx", "--scenario", path}).code == 3);
}

TEST_CASE("check-oracle passes for exact engines") {
    GenParams gp;
    gp.n = 48;
    gp.m = 48;
    gp.dim = 1;
    gp.uniform_power = false;
    gp.seed = 7;
    gp.decimals = 4;
    const std::string path = write_temp("wtd.json", scenario_to_json(generate_scenario(gp)));
    auto res = cli({"run", "--engine", "1d-weighted", "--scenario", path, "--backend", "exact",
                    "--check-oracle"});
    CHECK(res.code == 0);
    CHECK(res.err.find("oracle check passed") != std::string::npos);
}

TEST_CASE("gen is deterministic and respects separation") {
    auto a = cli({"gen", "--n", "16", "--m", "16", "--dim", "1", "--seed", "42"});
    auto b = cli({"gen", "--n", "16", "--m", "16", "--dim", "1", "--seed", "42"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);  // byte-identical for equal seeds

    auto c = cli({"gen", "--n", "16", "--m", "16", "--dim", "1", "--seed", "43"});
    CHECK(c.out != a.out);

    // post-generation separation scan at the default 1e-3
    ScenarioData sc = scenario_from_json(a.out);
    for (const auto& r : sc.receivers)
        for (const auto& t : sc.transmitters) {
            const Rat gap = scalar_abs(Rat(r[0].rat - t.pos[0].rat));
            CHECK(gap >= rat_from_decimal("0.001"));
        }
}

TEST_CASE("gen grid-tx emits a square transmitter grid") {
    auto res = cli({"gen", "--n", "4", "--m", "3", "--dim", "2", "--layout", "grid-tx", "--seed", "9"});
    CHECK(res.code == 0);
    ScenarioData sc = scenario_from_json(res.out);
    CHECK(sc.transmitters.size() == 4);
    // two distinct x values and two distinct y values
    std::set<std::string> xs, ys;
    for (const auto& t : sc.transmitters) {
        xs.insert(t.pos[0].text);
        ys.insert(t.pos[1].text);
    }
    CHECK(xs.size() == 2);
    CHECK(ys.size() == 2);
}

TEST_CASE("gen rejects infeasible separation") {
    auto res = cli({"gen", "--n", "64", "--m", "8", "--dim", "1", "--decimals", "1", "--min-sep",
                    "0.4", "--seed", "3"});
    CHECK(res.code == 2);
}

TEST_CASE("run output order matches the receiver order and counts rows") {
    GenParams gp;
    gp.n = 8;
    gp.m = 24;
    gp.dim = 1;
    gp.seed = 19;
    const std::string path = write_temp("order.json", scenario_to_json(generate_scenario(gp)));
    auto res = cli({"run", "--engine", "1d-uniform", "--scenario", path});
    CHECK(res.code == 0);
    CHECK(count_lines(res.out) == 25);  // header + one row per receiver
    // identical runs are byte-identical
    auto res2 = cli({"run", "--engine", "1d-uniform", "--scenario", path});
    CHECK(res.out == res2.out);
    // thread count must not change bytes
    auto res4 = cli({"run", "--engine", "1d-uniform", "--scenario", path, "--threads", "4"});
    CHECK(res.out == res4.out);
}

TEST_CASE("bench emits the header, one row per size, and a slope") {
    auto res = cli({"bench", "--engine", "oracle", "--sizes", "64,128", "--reps", "1", "--seed", "2"});
    CHECK(res.code == 0);
    std::istringstream is(res.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "engine,n,m,backend,median_ms,slope");
    size_t rows = 0;
    while (std::getline(is, line)) {
        CHECK(line.find("oracle,") == 0);
        ++rows;
    }
    CHECK(rows == 2);

    // single size: slope column empty
    auto single = cli({"bench", "--engine", "oracle", "--sizes", "64", "--reps", "1"});
    CHECK(single.out.find("f64,") != std::string::npos);
    std::istringstream is2(single.out);
    std::getline(is2, line);
    std::getline(is2, line);
    CHECK(line.back() == ',');
}
