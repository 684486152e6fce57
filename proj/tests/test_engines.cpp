#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sinr/engines.hpp"
#include "sinr/generate.hpp"
#include "sinr/wedges.hpp"
#include "testutil.hpp"

using namespace sinr;
using testutil::Rng;

namespace {

using TxSpec = std::pair<std::vector<std::string>, std::string>;

ScenarioData make_scenario(int alpha, const std::string& beta, const std::string& noise, int dim,
                           const std::vector<TxSpec>& txs,
                           const std::vector<std::vector<std::string>>& rxs) {
    ScenarioData s;
    s.alpha = alpha;
    s.beta = DecimalValue(beta);
    s.noise = DecimalValue(noise);
    s.dimension = dim;
    for (const auto& [pos, power] : txs) {
        Transmitter t;
        for (const auto& c : pos) t.pos.emplace_back(c);
        t.power = DecimalValue(power);
        s.transmitters.push_back(std::move(t));
    }
    for (const auto& r : rxs) {
        std::vector<DecimalValue> pt;
        for (const auto& c : r) pt.emplace_back(c);
        s.receivers.push_back(std::move(pt));
    }
    return s;
}

void set_grid(ScenarioData& s, const std::vector<std::string>& xs, const std::vector<std::string>& ys) {
    GridSpec g;
    for (const auto& x : xs) g.xs.emplace_back(x);
    for (const auto& y : ys) g.ys.emplace_back(y);
    s.grid = std::move(g);
    s.receivers.clear();
}

RunOptions exact_opt() {
    RunOptions o;
    o.backend = BackendKind::Exact;
    return o;
}

void check_reports_equal(const EngineReport& a, const EngineReport& b) {
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
        CAPTURE(i);
        CHECK(a.rows[i].rejected == b.rows[i].rejected);
        if (a.rows[i].rejected) continue;
        CHECK(a.rows[i].candidate == b.rows[i].candidate);
        CHECK(a.rows[i].verdict == b.rows[i].verdict);
    }
}

}  // namespace

TEST_CASE("sin_ratio_direct hand values") {
    // one transmitter p=1 at 0, alpha 2, N = 1/4, q = 1 -> 4
    CHECK(sin_ratio_direct_1d<Rat>({Rat(0)}, {Rat(1)}, 2, Rat(1, 4), Rat(1), 0) == 4);

    // S = {0, 2}, q = 0.4, N = 0.1: 6.25 / 0.490625
    const Rat got = sin_ratio_direct_1d<Rat>({Rat(0), Rat(2)}, {Rat(1), Rat(1)}, 2,
                                             rat_from_decimal("0.1"), rat_from_decimal("0.4"), 0);
    CHECK(got == rat_from_decimal("6.25") / rat_from_decimal("0.490625"));

    // symmetric pair, midpoint: 1/1.1 for either index
    for (size_t i : {0u, 1u}) {
        const Rat r = sin_ratio_direct_1d<Rat>({Rat(0), Rat(2)}, {Rat(1), Rat(1)}, 2,
                                               rat_from_decimal("0.1"), Rat(1), i);
        CHECK(r == Rat(10, 11));
    }
    CHECK_THROWS_AS(sin_ratio_direct_1d<Rat>({Rat(0)}, {Rat(1)}, 2, Rat(1), Rat(0), 0),
                    QueryOnTransmitter);
}

TEST_CASE("oracle hand examples") {
    auto hear = run_engine(EngineKind::Oracle,
                           make_scenario(2, "2", "0.25", 1, {{{"0"}, "1"}}, {{"1"}}), exact_opt());
    REQUIRE(hear.rows.size() == 1);
    CHECK(hear.rows[0].verdict == VerdictKind::Hear);
    CHECK(hear.rows[0].candidate == 0);
    CHECK(hear.rows[0].quantity == "4");

    auto silent = run_engine(
        EngineKind::Oracle,
        make_scenario(2, "2", "0.1", 1, {{{"0"}, "1"}, {{"2"}, "1"}}, {{"1"}}), exact_opt());
    CHECK(silent.rows[0].verdict == VerdictKind::Silent);

    auto empty = run_engine(EngineKind::Oracle, make_scenario(2, "2", "0.25", 1, {{{"0"}, "1"}}, {}),
                            exact_opt());
    CHECK(empty.rows.empty());
}

TEST_CASE("1d uniform engine hand examples") {
    auto r1 = run_engine(EngineKind::Batch1DUniform,
                         make_scenario(2, "2", "0.25", 1, {{{"0"}, "1"}}, {{"1"}}), exact_opt());
    CHECK(r1.rows[0].verdict == VerdictKind::Hear);
    CHECK(r1.rows[0].candidate == 0);
    CHECK(r1.rows[0].quantity == "4");

    // equidistant tie goes to the lower id, verdict Silent at beta 2
    auto r2 = run_engine(EngineKind::Batch1DUniform,
                         make_scenario(2, "2", "0.1", 1, {{{"0"}, "1"}, {{"2"}, "1"}}, {{"1"}}),
                         exact_opt());
    CHECK(r2.rows[0].candidate == 0);
    CHECK(r2.rows[0].verdict == VerdictKind::Silent);
}

TEST_CASE("1d uniform equals oracle on random exact instances") {
    for (uint64_t seed : {11u, 12u, 13u}) {
        GenParams gp;
        gp.n = 64;
        gp.m = 64;
        gp.dim = 1;
        gp.seed = seed;
        gp.decimals = 4;
        ScenarioData sc = generate_scenario(gp);
        auto engine = run_engine(EngineKind::Batch1DUniform, sc, exact_opt());
        auto oracle = run_engine(EngineKind::Oracle, sc, exact_opt());
        check_reports_equal(engine, oracle);
    }
}

TEST_CASE("1d weighted engine: candidate cells of the two-site example") {
    // sites {0 (p=1), 1 (p=16)}: candidate is site 0 exactly on (-1/3, 0.2)
    auto sc = make_scenario(2, "2", "0.1", 1, {{{"0"}, "1"}, {{"1"}, "16"}},
                            {{"-0.2"}, {"0.1"}, {"0.19"}, {"0.21"}, {"-0.4"}, {"3"}});
    auto rep = run_engine(EngineKind::Batch1DWeighted, sc, exact_opt());
    CHECK(rep.rows[0].candidate == 0);
    CHECK(rep.rows[1].candidate == 0);
    CHECK(rep.rows[2].candidate == 0);
    CHECK(rep.rows[3].candidate == 1);
    CHECK(rep.rows[4].candidate == 1);
    CHECK(rep.rows[5].candidate == 1);
}

TEST_CASE("1d weighted agrees with 1d uniform when powers are equal") {
    GenParams gp;
    gp.n = 48;
    gp.m = 48;
    gp.dim = 1;
    gp.seed = 77;
    gp.decimals = 4;
    ScenarioData sc = generate_scenario(gp);
    auto w = run_engine(EngineKind::Batch1DWeighted, sc, exact_opt());
    auto u = run_engine(EngineKind::Batch1DUniform, sc, exact_opt());
    check_reports_equal(w, u);
}

TEST_CASE("1d weighted equals oracle on random weighted instances") {
    for (uint64_t seed : {21u, 22u}) {
        GenParams gp;
        gp.n = 64;
        gp.m = 64;
        gp.dim = 1;
        gp.uniform_power = false;
        gp.seed = seed;
        gp.decimals = 4;
        ScenarioData sc = generate_scenario(gp);
        auto engine = run_engine(EngineKind::Batch1DWeighted, sc, exact_opt());
        auto oracle = run_engine(EngineKind::Oracle, sc, exact_opt());
        check_reports_equal(engine, oracle);
    }
}

TEST_CASE("float64 1d engines stay sound against the oracle under the guard") {
    GenParams gp;
    gp.n = 128;
    gp.m = 128;
    gp.dim = 1;
    gp.seed = 31;
    ScenarioData sc = generate_scenario(gp);
    RunOptions f64;
    auto engine = run_engine(EngineKind::Batch1DUniform, sc, f64);
    auto oracle = run_engine(EngineKind::Oracle, sc, exact_opt());
    for (size_t i = 0; i < engine.rows.size(); ++i) {
        if (engine.rows[i].verdict == VerdictKind::Hear) {
            CHECK(oracle.rows[i].verdict == VerdictKind::Hear);
            CHECK(oracle.rows[i].candidate == engine.rows[i].candidate);
        }
        if (engine.rows[i].verdict == VerdictKind::Silent)
            CHECK(oracle.rows[i].verdict == VerdictKind::Silent);
    }
}

TEST_CASE("grid-tx hand example: 2x2 grid, query (2, 0)") {
    auto sc = make_scenario(2, "2", "0.05", 2,
                            {{{"0", "0"}, "1"}, {{"0", "1"}, "1"}, {{"1", "0"}, "1"}, {{"1", "1"}, "1"}},
                            {{"2", "0"}});
    for (auto opt : {exact_opt(), RunOptions{}}) {
        auto rep = run_engine(EngineKind::GridTx, sc, opt);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].candidate == 2);  // transmitter (1, 0)
        CHECK(rep.rows[0].verdict == VerdictKind::Silent);
        CHECK(std::abs(parse_double(rep.rows[0].quantity) - 1.0) <= 1e-12);
    }
}

TEST_CASE("grid-tx far query picks the nearest corner") {
    auto sc = make_scenario(2, "2", "0.1", 2,
                            {{{"0", "0"}, "1"}, {{"0", "1"}, "1"}, {{"1", "0"}, "1"}, {{"1", "1"}, "1"}},
                            {{"9", "9"}});
    auto rep = run_engine(EngineKind::GridTx, sc, exact_opt());
    CHECK(rep.rows[0].candidate == 3);  // transmitter (1, 1)
}

TEST_CASE("grid-tx 16x16: exact field equals the direct sum, f64 within 1e-6, oracle verdicts") {
    GenParams gp;
    gp.n = 256;
    gp.m = 24;
    gp.dim = 2;
    gp.layout = GenParams::Layout::GridTx;
    gp.seed = 41;
    ScenarioData sc = generate_scenario(gp);

    auto exact = run_engine(EngineKind::GridTx, sc, exact_opt());
    auto oracle = run_engine(EngineKind::Oracle, sc, exact_opt());
    check_reports_equal(exact, oracle);

    // E values must agree exactly with the direct-summation oracle
    for (size_t i = 0; i < exact.rows.size(); ++i)
        CHECK(exact.rows[i].quantity == oracle.rows[i].quantity);

    RunOptions f64;
    auto approx = run_engine(EngineKind::GridTx, sc, f64);
    for (size_t i = 0; i < approx.rows.size(); ++i) {
        const double want = parse_double(oracle.rows[i].quantity);
        CHECK(testutil::rel_err(parse_double(approx.rows[i].quantity), want) <= 1e-6);
    }
}

TEST_CASE("grid-tx accepts rectangular grids") {
    // 2 x 3 grid, uniform power; verdicts and candidates match the oracle
    std::vector<TxSpec> txs;
    for (const char* x : {"0.2", "0.7"})
        for (const char* y : {"0.1", "0.5", "0.9"}) txs.push_back({{x, y}, "1"});
    auto sc = make_scenario(2, "2", "0.1", 2, txs, {{"0.45", "0.3"}, {"0.9", "0.95"}, {"0.05", "0"}});
    auto engine = run_engine(EngineKind::GridTx, sc, exact_opt());
    auto oracle = run_engine(EngineKind::Oracle, sc, exact_opt());
    check_reports_equal(engine, oracle);
    for (size_t i = 0; i < engine.rows.size(); ++i)
        CHECK(engine.quantity_exact[i] == oracle.quantity_exact[i]);
}

TEST_CASE("grid-tx engine mismatch without a grid") {
    auto sc = make_scenario(2, "2", "0.1", 2, {{{"0", "0"}, "1"}, {{"1", "7"}, "1"}}, {{"2", "2"}});
    CHECK_THROWS_AS(run_engine(EngineKind::GridTx, sc, exact_opt()), EngineMismatch);
}

TEST_CASE("grid-rx hand example: four receivers at distance one") {
    // receivers (±0.6, ±0.8) all at distance 1 from the origin transmitter
    auto sc = make_scenario(2, "1.5", "0.5", 2, {{{"0", "0"}, "1"}}, {});
    set_grid(sc, {"-0.6", "0.6"}, {"-0.8", "0.8"});
    auto rep = run_engine(EngineKind::GridRx, sc, exact_opt());
    REQUIRE(rep.rows.size() == 4);
    for (const auto& r : rep.rows) {
        CHECK(r.verdict == VerdictKind::Hear);
        CHECK(r.candidate == 0);
        CHECK(r.quantity == "2");  // E = 1 / 0.5
    }
}

TEST_CASE("grid-rx bisector line: candidates flip at the midpoint ordinate") {
    // equal powers at (0.25, 0.2) and (0.25, 0.8): the vertical line x=0.25
    // switches candidate at y = 0.5
    auto sc = make_scenario(2, "2", "0.1", 2, {{{"0.25", "0.2"}, "1"}, {{"0.25", "0.8"}, "1"}}, {});
    set_grid(sc, {"0.25"}, {"0.3", "0.49", "0.51", "0.7"});
    auto rep = run_engine(EngineKind::GridRx, sc, exact_opt());
    CHECK(rep.rows[0].candidate == 0);
    CHECK(rep.rows[1].candidate == 0);
    CHECK(rep.rows[2].candidate == 1);
    CHECK(rep.rows[3].candidate == 1);
}

TEST_CASE("grid-rx equals oracle on a random weighted instance") {
    GenParams gp;
    gp.n = 12;
    gp.m = 144;
    gp.dim = 2;
    gp.layout = GenParams::Layout::GridRx;
    gp.uniform_power = false;
    gp.seed = 51;
    gp.decimals = 4;
    ScenarioData sc = generate_scenario(gp);
    auto engine = run_engine(EngineKind::GridRx, sc, exact_opt());
    auto oracle = run_engine(EngineKind::Oracle, sc, exact_opt());
    check_reports_equal(engine, oracle);
}

TEST_CASE("grid-rx marks receivers that sit on transmitters") {
    auto sc = make_scenario(2, "2", "0.1", 2, {{{"0.5", "0.5"}, "1"}, {{"0.1", "0.9"}, "1"}}, {});
    set_grid(sc, {"0.1", "0.5"}, {"0.5", "0.9"});
    auto rep = run_engine(EngineKind::GridRx, sc, exact_opt());
    // grid rows x-major: (0.1,0.5), (0.1,0.9), (0.5,0.5), (0.5,0.9)
    CHECK_FALSE(rep.rows[0].rejected);
    CHECK(rep.rows[1].rejected);
    CHECK(rep.rows[2].rejected);
    CHECK_FALSE(rep.rows[3].rejected);
}

TEST_CASE("grid-rx with an affine pre-transform matches the oracle") {
    GenParams gp;
    gp.n = 10;
    gp.m = 64;
    gp.dim = 2;
    gp.layout = GenParams::Layout::GridRx;
    gp.uniform_power = false;
    gp.seed = 61;
    gp.decimals = 4;
    ScenarioData sc = generate_scenario(gp);
    RunOptions opt = exact_opt();
    opt.grid_affine = {{"1", "0.25", "0.125", "1", "0.5", "-0.25"}};  // sheared and shifted
    auto engine = run_engine(EngineKind::GridRx, sc, opt);
    auto oracle = run_engine(EngineKind::Oracle, sc, opt);
    check_reports_equal(engine, oracle);
}

TEST_CASE("tilde_f single-transmitter values") {
    // q = (1,1): the L-inf distance is 1
    auto v = tilde_f_batch_f64({{0, 0}}, {1.0}, 2, {{1, 1}}, 4);
    CHECK(v[0] == doctest::Approx(1.0));

    // q = (3,4): |dy| > |dx| so the second frame claims it; contribution 1/16
    auto w = tilde_f_batch_f64({{0, 0}}, {1.0}, 2, {{3, 4}}, 4);
    CHECK(w[0] == doctest::Approx(1.0 / 16.0));

    auto e = tilde_f_batch_exact_k4({{Rat(0), Rat(0)}}, {Rat(1)}, 2, {{Rat(1), Rat(1)}});
    CHECK(e[0] == 1);
}

TEST_CASE("tilde_f matches the polygonal-norm double loop, k in {4, 12}") {
    Rng rng(6001);
    const int n = 256, m = 256;
    std::vector<Pt2<double>> sites(n), queries(m);
    std::vector<double> power(n);
    for (auto& s : sites) s = {rng.unit(), rng.unit()};
    for (auto& q : queries) q = {rng.unit(), rng.unit()};
    for (auto& p : power) p = 0.1 + 10 * rng.unit();
    for (int k : {4, 12}) {
        auto got = tilde_f_batch_f64(sites, power, 2, queries, k);
        for (int i = 0; i < m; ++i) {
            double direct = 0;
            for (int j = 0; j < n; ++j) {
                const double l =
                    polygonal_norm(queries[i].x - sites[j].x, queries[i].y - sites[j].y, k);
                direct += power[j] / (l * l);
            }
            CHECK(testutil::rel_err(got[i], direct) <= 1e-6);
        }
    }
}

TEST_CASE("tilde_f exact k=4 equals the rational double loop") {
    Rng rng(6002);
    const int n = 64, m = 32;
    std::vector<Pt2<Rat>> sites(n), queries(m);
    std::vector<Rat> power(n);
    for (auto& s : sites) s = {rng.rat_unit(499), rng.rat_unit(499)};
    for (auto& q : queries) q = {rng.rat_unit(997), rng.rat_unit(997)};
    for (auto& p : power) {
        p = Rat(1 + rng.below(50), 10);
        p.canonicalize();
    }
    auto got = tilde_f_batch_exact_k4(sites, power, 2, queries);
    for (int i = 0; i < m; ++i) {
        Rat direct(0);
        for (int j = 0; j < n; ++j) {
            const Rat l = std::max(scalar_abs(Rat(queries[i].x - sites[j].x)),
                                   scalar_abs(Rat(queries[i].y - sites[j].y)));
            REQUIRE(l != 0);
            direct += power[j] / (l * l);
        }
        CHECK(got[i] == direct);
    }
}

TEST_CASE("decide_verdict threshold examples") {
    bool dem = false;
    CHECK(decide_verdict(10.0, 2.0, 2.0, 0.0, &dem) == VerdictKind::Hear);
    CHECK(decide_verdict(0.5, 2.0, 2.0, 0.0, &dem) == VerdictKind::Silent);
    CHECK(decide_verdict(2.0, 2.0, 2.0, 0.0, &dem) == VerdictKind::Uncertain);
    // boundary: exactly gamma*beta is a Hear
    CHECK(decide_verdict(4.0, 2.0, 2.0, 0.0, &dem) == VerdictKind::Hear);
    // guard demotion
    CHECK(decide_verdict(4.0, 2.0, 2.0, 1e-6, &dem) == VerdictKind::Uncertain);
    CHECK(dem);
    CHECK(decide_verdict(Rat(10), Rat(2), Rat(2), 0.0, &dem) == VerdictKind::Hear);
}

TEST_CASE("choose_k closed form and monotonicity") {
    auto cfg = choose_k(0.1, 2);
    CHECK(cfg.k == 12);
    CHECK(cfg.gamma == doctest::Approx(1.0 / std::pow(std::cos(M_PI / 12), 2)).epsilon(1e-12));
    CHECK(cfg.gamma <= 1.1);

    // independent scan oracle: least even k >= 4 with sec^alpha <= 1 + eps
    for (double eps : {0.5, 0.1, 0.02}) {
        for (int alpha : {2, 4}) {
            int k = 4;
            while (std::pow(1.0 / std::cos(M_PI / k), alpha) > 1.0 + eps) k += 2;
            auto got = choose_k(eps, alpha);
            CHECK(got.k == k);
            CHECK(got.gamma <= 1.0 + eps);
        }
    }

    // gamma(k) non-increasing toward 1
    double prev = config_for_k(4, 2).gamma;
    CHECK(prev == doctest::Approx(2.0));
    for (int k = 6; k <= 64; k += 2) {
        const double g = config_for_k(k, 2).gamma;
        CHECK(g <= prev + 1e-15);
        prev = g;
    }
    CHECK(prev < 1.01);
    CHECK_THROWS_AS(choose_k(0.0, 2), InvalidEps);
    CHECK_THROWS_AS(choose_k(1.0, 2), InvalidEps);
}

TEST_CASE("approx engine single-transmitter bracket example") {
    auto sc = make_scenario(2, "2", "1", 2, {{{"0", "0"}, "1"}}, {{"1", "1"}});
    auto rep = run_engine(EngineKind::Approx, sc, exact_opt());
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].quantity == "1");  // surrogate value
    // true quantity: E = 0.5; sandwich 1/2 <= 0.5 <= 2 holds
    const Rat e = sin_ratio_direct<Rat>({{Rat(0), Rat(0)}}, {Rat(1)}, 2, Rat(1),
                                        {Rat(1), Rat(1)}, 0);
    CHECK(e == Rat(1, 2));
}

TEST_CASE("approx engine sandwich and soundness on a random uniform instance") {
    GenParams gp;
    gp.n = 128;
    gp.m = 128;
    gp.dim = 2;
    gp.seed = 71;
    ScenarioData sc = generate_scenario(gp);
    RunOptions f64;

    auto oracle = run_engine(EngineKind::Oracle, sc, exact_opt());
    for (EngineKind kind : {EngineKind::Approx, EngineKind::Ptas}) {
        RunOptions opt = f64;
        opt.eps = 0.1;
        auto rep = run_engine(kind, sc, opt);
        const double gamma = rep.gamma;
        for (size_t i = 0; i < rep.rows.size(); ++i) {
            const double et = parse_double(rep.rows[i].quantity);
            const double e = parse_double(oracle.rows[i].quantity);
            CHECK(et / gamma <= e * (1 + 1e-9));
            CHECK(e <= gamma * et * (1 + 1e-9));
            if (rep.rows[i].verdict == VerdictKind::Hear) {
                CHECK(oracle.rows[i].verdict == VerdictKind::Hear);
                CHECK(oracle.rows[i].candidate == rep.rows[i].candidate);
            }
            if (rep.rows[i].verdict == VerdictKind::Silent)
                CHECK(oracle.rows[i].verdict == VerdictKind::Silent);
            if (rep.rows[i].verdict == VerdictKind::Uncertain) {
                CHECK(e >= parse_double(sc.beta.text) / (gamma * gamma) * (1 - 1e-9));
                CHECK(e < parse_double(sc.beta.text) * gamma * gamma * (1 + 1e-9));
            }
        }
    }
}

TEST_CASE("weighted approx engine requires beta above gamma^2") {
    GenParams gp;
    gp.n = 32;
    gp.m = 32;
    gp.dim = 2;
    gp.uniform_power = false;
    gp.seed = 81;
    gp.beta = "2";  // gamma = 2 at k = 4, so gamma^2 = 4 > beta
    ScenarioData sc = generate_scenario(gp);
    CHECK_THROWS_AS(run_engine(EngineKind::Approx, sc, RunOptions{}), EngineMismatch);

    gp.beta = "4.5";
    ScenarioData ok = generate_scenario(gp);
    auto rep = run_engine(EngineKind::Approx, ok, RunOptions{});
    auto oracle = run_engine(EngineKind::Oracle, ok, exact_opt());
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        if (rep.rows[i].verdict == VerdictKind::Hear) {
            CHECK(oracle.rows[i].verdict == VerdictKind::Hear);
            CHECK(oracle.rows[i].candidate == rep.rows[i].candidate);
        }
        if (rep.rows[i].verdict == VerdictKind::Silent)
            CHECK(oracle.rows[i].verdict == VerdictKind::Silent);
    }
}

TEST_CASE("candidate ids are invariant under common power scaling") {
    GenParams gp;
    gp.n = 40;
    gp.m = 40;
    gp.dim = 2;
    gp.uniform_power = false;
    gp.seed = 91;
    gp.beta = "4.5";
    ScenarioData sc = generate_scenario(gp);
    ScenarioData scaled = sc;
    for (auto& t : scaled.transmitters) {
        const Rat p = t.power.rat * 7;
        t.power.rat = p;
        t.power.f64 = to_double(p);
        t.power.text = format_quantity(p);  // echoed only; engines read the typed fields
    }
    auto a = run_engine(EngineKind::Oracle, sc, exact_opt());
    auto b = run_engine(EngineKind::Oracle, scaled, exact_opt());
    for (size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].candidate == b.rows[i].candidate);
}

TEST_CASE("exact ptas beyond k = 4 is rejected, float64 accepts it") {
    GenParams gp;
    gp.n = 16;
    gp.m = 16;
    gp.dim = 2;
    gp.seed = 95;
    ScenarioData sc = generate_scenario(gp);
    RunOptions opt = exact_opt();
    opt.eps = 0.1;  // k = 12
    CHECK_THROWS_AS(run_engine(EngineKind::Ptas, sc, opt), EngineMismatch);
    RunOptions f64;
    f64.eps = 0.1;
    auto rep = run_engine(EngineKind::Ptas, sc, f64);
    CHECK(rep.k == 12);
}

TEST_CASE("engine and scenario dimension mismatches raise") {
    auto sc2 = make_scenario(2, "2", "0.1", 2, {{{"0", "0"}, "1"}}, {{"1", "1"}});
    CHECK_THROWS_AS(run_engine(EngineKind::Batch1DUniform, sc2, exact_opt()), EngineMismatch);
    auto sc1 = make_scenario(2, "2", "0.1", 1, {{{"0"}, "1"}}, {{"1"}});
    CHECK_THROWS_AS(run_engine(EngineKind::Approx, sc1, exact_opt()), EngineMismatch);
    CHECK_THROWS_AS(run_engine(EngineKind::GridRx, sc2, exact_opt()), EngineMismatch);
    // non-uniform power on the uniform engine
    auto scw = make_scenario(2, "2", "0.1", 1, {{{"0"}, "1"}, {{"2"}, "3"}}, {{"1"}});
    CHECK_THROWS_AS(run_engine(EngineKind::Batch1DUniform, scw, exact_opt()), EngineMismatch);
}
