#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sinr/bench.hpp"
#include "sinr/engines.hpp"
#include "sinr/generate.hpp"

namespace sinr {

namespace {

int default_threads() {
    if (const char* env = std::getenv("SINRBATCH_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

void write_csv(std::ostream& out, const EngineReport& rep) {
    out << "index,x,y,engine,candidate,quantity,verdict,flags\n";
    for (const auto& r : rep.rows) {
        out << r.index << ',' << r.x << ',' << r.y << ',' << rep.engine << ',';
        if (r.candidate >= 0) out << r.candidate;
        out << ',' << r.quantity << ',' << verdict_name(r.verdict) << ',' << r.flags() << '\n';
    }
}

void write_jsonl(std::ostream& out, const EngineReport& rep) {
    auto esc = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '"' || c == '\\') o += '\\';
            o += c;
        }
        return o;
    };
    for (const auto& r : rep.rows) {
        out << "{\"index\":" << r.index << ",\"x\":\"" << esc(r.x) << "\",\"y\":\"" << esc(r.y)
            << "\",\"engine\":\"" << rep.engine << "\",\"candidate\":" << r.candidate
            << ",\"quantity\":\"" << esc(r.quantity) << "\",\"verdict\":\""
            << verdict_name(r.verdict) << "\",\"flags\":\"" << r.flags() << "\"}\n";
    }
}

void write_metadata(std::ostream& err, const EngineReport& rep) {
    err << "engine=" << rep.engine << " backend=" << backend_name(rep.backend);
    if (rep.k) err << " k=" << rep.k << " gamma=" << rep.gamma << " eps=" << rep.eps;
    if (!rep.normalization.empty()) err << " normalization=\"" << rep.normalization << "\"";
    err << " threads=" << rep.threads << " candidate_ms=" << rep.candidate_ms
        << " algebra_ms=" << rep.algebra_ms << " verdict_ms=" << rep.verdict_ms << "\n";
}

// engine Hear must be oracle Hear of the same transmitter; engine Silent
// must be oracle Silent; Uncertain is always admissible
int diff_against_oracle(std::ostream& err, const EngineReport& rep, const EngineReport& oracle) {
    size_t bad = 0;
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        const auto& o = oracle.rows[i];
        if (r.rejected || o.rejected) continue;
        std::string why;
        if (r.verdict == VerdictKind::Hear &&
            (o.verdict != VerdictKind::Hear || o.candidate != r.candidate))
            why = "engine Hear(" + std::to_string(r.candidate) + ") vs oracle " +
                  verdict_name(o.verdict) + "(" + std::to_string(o.candidate) + ")";
        else if (r.verdict == VerdictKind::Silent && o.verdict != VerdictKind::Silent)
            why = std::string("engine Silent vs oracle ") + verdict_name(o.verdict);
        if (!why.empty()) {
            if (bad < 20)
                err << "oracle diff at receiver " << i << " (" << r.x
                    << (r.y.empty() ? "" : "," + r.y) << "): " << why << "\n";
            ++bad;
        }
    }
    if (bad) {
        err << "oracle diff: " << bad << " unsound definite verdict(s)\n";
        return 4;
    }
    return 0;
}

std::vector<size_t> parse_sizes(const std::string& spec) {
    std::vector<size_t> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(static_cast<size_t>(std::stoull(tok)));
    }
    if (out.empty()) throw CLI::ValidationError("--sizes", "empty size list");
    return out;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Batched SINR reception queries"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run = app.add_subcommand("run", "run an engine over a scenario file");
    std::string engine_arg = "oracle", scenario_path, backend_arg = "f64", out_arg = "csv";
    std::string eval_mode_arg = "direct", affine_arg;
    double eps = 0.1;
    bool check_oracle = false;
    uint64_t seed = 0;
    int threads = default_threads();
    run->add_option("--engine", engine_arg,
                    "oracle|1d-uniform|1d-weighted|grid-tx|grid-rx|approx|ptas");
    run->add_option("--scenario", scenario_path, "scenario JSON path")->required();
    run->add_option("--eps", eps, "ptas approximation parameter");
    run->add_option("--backend", backend_arg, "exact|f64");
    run->add_option("--out", out_arg, "csv|jsonl");
    run->add_flag("--check-oracle", check_oracle, "diff definite verdicts against the oracle");
    run->add_option("--seed", seed, "accepted for reproducibility bookkeeping");
    run->add_option("--threads", threads, "worker threads (or SINRBATCH_THREADS)");
    run->add_option("--eval-mode", eval_mode_arg, "float64 fraction evaluation: direct|merged");
    run->add_option("--affine", affine_arg,
                    "a,b,c,d,e,f applied to receiver grids: (x,y)->(ax+by+e, cx+dy+f)");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "emit a random scenario as JSON");
    GenParams gp;
    std::string layout_arg = "random", power_arg = "uniform";
    gen->add_option("--n", gp.n, "transmitter count");
    gen->add_option("--m", gp.m, "receiver count");
    gen->add_option("--dim", gp.dim, "1 or 2");
    gen->add_option("--power", power_arg, "uniform|random");
    gen->add_option("--layout", layout_arg, "random|grid-tx|grid-rx");
    gen->add_option("--seed", gp.seed, "PRNG seed");
    gen->add_option("--min-sep", gp.min_sep, "receiver-transmitter separation (decimal)");
    gen->add_option("--alpha", gp.alpha, "path-loss exponent (even)");
    gen->add_option("--beta", gp.beta, "reception threshold (decimal)");
    gen->add_option("--noise", gp.noise, "background noise (decimal)");
    gen->add_option("--decimals", gp.decimals, "coordinate digits after the point");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "size sweep with log-log slope");
    std::string bench_engine = "1d-uniform", bench_backend = "f64", sizes_arg = "1024,2048,4096";
    int reps = 3;
    uint64_t bench_seed = 1;
    int bench_threads = default_threads();
    bench->add_option("--engine", bench_engine, "engine to sweep");
    bench->add_option("--sizes", sizes_arg, "comma-separated n=m sizes");
    bench->add_option("--reps", reps, "repetitions per size (median)");
    bench->add_option("--backend", bench_backend, "exact|f64");
    bench->add_option("--seed", bench_seed, "instance seed");
    bench->add_option("--threads", bench_threads, "worker threads");

    std::vector<const char*> argv;
    argv.push_back("sinrbatch");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::stringstream dummy_out;
        return app.exit(e, dummy_out, err);
    }

    auto parse_backend = [&](const std::string& b) {
        if (b == "exact") return BackendKind::Exact;
        if (b == "f64") return BackendKind::Float64;
        throw EngineMismatch("unknown backend '" + b + "'");
    };

    try {
        if (run->parsed()) {
            const auto kind = engine_from_name(engine_arg);
            if (!kind) throw EngineMismatch("unknown engine '" + engine_arg + "'");

            std::ifstream in(scenario_path);
            if (!in) {
                err << "cannot read scenario file: " << scenario_path << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            ScenarioData sc = scenario_from_json(buf.str());

            RunOptions opt;
            opt.backend = parse_backend(backend_arg);
            opt.threads = threads;
            opt.eps = eps;
            if (eval_mode_arg == "merged")
                opt.f64_eval_mode = FracEvalMode::Merged;
            else if (eval_mode_arg == "direct")
                opt.f64_eval_mode = FracEvalMode::Direct;
            else
                throw EngineMismatch("unknown eval mode '" + eval_mode_arg + "'");
            if (!affine_arg.empty()) {
                std::array<std::string, 6> entries;
                std::stringstream ss(affine_arg);
                std::string tok;
                size_t idx = 0;
                while (std::getline(ss, tok, ',') && idx < 6) entries[idx++] = tok;
                if (idx != 6) throw ParseError("--affine needs six comma-separated decimals");
                opt.grid_affine = entries;
            }

            EngineReport rep = run_engine(*kind, sc, opt);
            write_metadata(err, rep);
            if (out_arg == "jsonl")
                write_jsonl(out, rep);
            else if (out_arg == "csv")
                write_csv(out, rep);
            else
                throw EngineMismatch("unknown output format '" + out_arg + "'");

            if (check_oracle && *kind != EngineKind::Oracle) {
                EngineReport oracle = run_engine(EngineKind::Oracle, sc, opt);
                const int rc = diff_against_oracle(err, rep, oracle);
                if (rc) return rc;
                err << "oracle check passed (" << rep.rows.size() << " receivers)\n";
            }
            return 0;
        }

        if (gen->parsed()) {
            gp.uniform_power = power_arg == "uniform";
            if (!gp.uniform_power && power_arg != "random")
                throw ParseError("unknown power profile '" + power_arg + "'");
            if (layout_arg == "random")
                gp.layout = GenParams::Layout::Random;
            else if (layout_arg == "grid-tx")
                gp.layout = GenParams::Layout::GridTx;
            else if (layout_arg == "grid-rx")
                gp.layout = GenParams::Layout::GridRx;
            else
                throw ParseError("unknown layout '" + layout_arg + "'");
            ScenarioData sc = generate_scenario(gp);
            out << scenario_to_json(sc);
            return 0;
        }

        if (bench->parsed()) {
            const auto kind = engine_from_name(bench_engine);
            if (!kind) throw EngineMismatch("unknown engine '" + bench_engine + "'");
            BenchResult res = bench_sweep(*kind, parse_backend(bench_backend),
                                          parse_sizes(sizes_arg), reps, bench_seed, bench_threads);
            out << "engine,n,m,backend,median_ms,slope\n";
            for (const auto& row : res.rows) {
                out << row.engine << ',' << row.n << ',' << row.m << ','
                    << backend_name(row.backend) << ',' << row.median_ms << ',';
                if (res.slope) out << *res.slope;
                out << '\n';
            }
            return 0;
        }
    } catch (const EngineMismatch& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace sinr
