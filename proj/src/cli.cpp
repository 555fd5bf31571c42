#include "spanner/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spanner/cycle.hpp"
#include "spanner/enlarge.hpp"
#include "spanner/gadget.hpp"
#include "spanner/greedy.hpp"
#include "spanner/oracle.hpp"

namespace spanner {

namespace {

using nlohmann::ordered_json;

std::uint64_t env_seed_fallback() {
    if (const char* env = std::getenv("SPANNER_LAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw InputError("SPANNER_LAB_SEED is not a number");
        }
    }
    return 0;
}

// Seed stream decorrelating trials without consuming shared generator state.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t x = seed ^ (a * 0x9e3779b97f4a7c15ull) ^ (b * 0xbf58476d1ce4e5b9ull) ^
                      (c * 0x94d049bb133111ebull);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

int ceil_frac(long long a, long long b) { return static_cast<int>((a + b - 1) / b); }

struct RegimeBand {
    RegimeChoice regime;
    int num, den;  // threshold k >= ceil(num*n/den) + slack
    int n_lo, n_hi;
};

const std::vector<RegimeBand>& regime_bands() {
    static const std::vector<RegimeBand> bands = {
        {{RegimeKind::Extreme, 0}, 3, 4, 36, 52},
        {{RegimeKind::Good, 0}, 2, 3, 28, 46},
        {{RegimeKind::Approx2, 0}, 4, 7, 22, 44},
        {{RegimeKind::Bucket, 3}, 12, 23, 20, 44},
        {{RegimeKind::Bucket, 4}, 1, 2, 18, 44},
    };
    return bands;
}

std::string csv_header() {
    return "n,k,regime,model,in_edges,out_edges,bound_rhs,bound_ok,iterations,violations\n";
}

void csv_row(std::ostringstream& out, int n, int k, const std::string& regime,
             const std::string& model, long long in_edges, long long out_edges,
             long long bound_rhs, bool bound_ok, long long iterations, int violations) {
    out << n << ',' << k << ',' << regime << ',' << model << ',' << in_edges << ','
        << out_edges << ',' << bound_rhs << ',' << (bound_ok ? 1 : 0) << ',' << iterations
        << ',' << violations << '\n';
}

std::string bench_regimes(std::uint64_t seed, int trials, int slack) {
    std::ostringstream out;
    out << csv_header();
    for_each_regime_trial(seed, trials, slack,
                          [&](const RegimeTrial& trial, const EnlargeResult& res) {
                              csv_row(out, trial.n, trial.k, trial.regime, trial.model,
                                      res.trace.in_edges, res.trace.out_edges,
                                      res.trace.bound_rhs, res.trace.bound_ok,
                                      static_cast<long long>(res.trace.iterations.size()),
                                      res.ok() ? 0 : 1);
                          });
    return out.str();
}

std::string bench_gadget(int trials) {
    std::ostringstream out;
    out << csv_header();
    for (int k : {36, 42, 48, 54, 60}) {
        for (int trial = 0; trial < trials; ++trial) {
            int n = gadget_core_size(k) + 7 * trial;
            auto gadget = gen_lower_bound(k, n);
            auto report = check_arc_inequality(gadget);
            bool formulas_ok = gadget.spec.core_size == k + 6 * gadget.spec.arc_length - 6 &&
                               mask_popcount(gadget.baseline) == n;
            csv_row(out, n, k, "gadget", "gadget", gadget.g.edge_count(),
                    mask_popcount(gadget.baseline), gadget.spec.core_size, formulas_ok,
                    report.checks, static_cast<int>(report.violations.size()));
        }
    }
    return out.str();
}

std::string bench_oracle_cross(std::uint64_t seed, int trials, int slack) {
    std::ostringstream out;
    out << csv_header();
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(mix_seed(seed, 3, 0, static_cast<std::uint64_t>(trial)));
        int n = 6 + static_cast<int>(detail::rng_below(rng, 4));
        RandomModel model;
        model.kind = RandomModel::Kind::CyclePlusChords;
        model.chords = 1 + static_cast<int>(detail::rng_below(rng, 2));
        int k = n - 1 - static_cast<int>(detail::rng_below(rng, 2));
        auto g = std::make_shared<Graph>(gen_random(n, model, rng()));
        auto opt = min_spanner(*g, k, false);
        EdgeMask witness = empty_mask(*g);
        for (int id : opt.witnesses.at(0)) witness[static_cast<size_t>(id)] = 1;
        SpannerInstance inst(g, k, witness);
        auto report = cross_check_enlarger(inst, {RegimeKind::Auto, 3}, slack);
        csv_row(out, n, k, report.regime, model.name(), report.in_edges, report.out_edges,
                report.n + report.approx_rhs, report.approx_ok && report.regime_bound_ok,
                0, report.enlarge_ok ? 0 : 1);
    }
    return out.str();
}

Graph load_graph(const std::string& path) {
    try {
        return read_edge_list_file(path);
    } catch (const InputError& e) {
        throw;  // caller maps to exit codes
    }
}

struct CliError {
    int code;
    std::string message;
};

int finish_violation(const LemmaViolation& v, const std::string& dir) {
    write_violation_dir(dir, v);
    std::cerr << "lemma violation (" << v.stage << "): " << v.detail << "\n";
    std::cerr << "instance serialized to " << dir << "\n";
    return kExitViolation;
}

std::string girth_to_string(const std::optional<int>& girth) {
    return girth ? std::to_string(*girth) : "inf";
}

int cmd_gen_gadget(int k, int n, const std::string& out_path, const std::string& baseline_path) {
    auto gadget = gen_lower_bound(k, n);
    write_edge_list_file(out_path, gadget.g);
    if (!baseline_path.empty())
        write_edge_list_file(baseline_path, gadget.g, gadget.baseline, out_path);
    ordered_json j;
    j["n"] = gadget.spec.n;
    j["k"] = gadget.spec.k;
    j["core_size"] = gadget.spec.core_size;
    j["arc_length"] = gadget.spec.arc_length;
    j["baseline_edges"] = mask_popcount(gadget.baseline);
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_gen_random(const std::string& model_text, int n, std::uint64_t seed,
                   const std::string& out_path) {
    auto model = RandomModel::parse(model_text);
    Graph g = gen_random(n, model, seed);
    write_edge_list_file(out_path, g);
    ordered_json j;
    j["n"] = g.vertex_count();
    j["m"] = g.edge_count();
    j["model"] = model.name();
    std::cout << j.dump() << "\n";
    return kExitOk;
}

EdgeOrdering parse_order(const Graph& g, const std::string& spec) {
    if (spec == "lex") return lex_ordering(g);
    if (spec.rfind("random:", 0) == 0) return random_ordering(g, std::stoull(spec.substr(7)));
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in) throw InputError("cannot open ordering file " + spec.substr(5));
        std::vector<Edge> pairs;
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::istringstream ls(line);
            long u, v;
            if (ls >> u >> v) pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
        return ordering_from_pairs(g, pairs);
    }
    throw InputError("--order expects lex, random:<seed> or file:<path>");
}

int cmd_greedy(const std::string& input, int k, const std::string& order_spec,
               const std::string& out_path) {
    auto g = std::make_shared<Graph>(load_graph(input));
    auto order = parse_order(*g, order_spec);
    auto inst = greedy_spanner(g, k, order);
    if (!out_path.empty()) write_edge_list_file(out_path, *g, inst.sub, input);
    auto girth = girth_value(*g, &inst.sub);
    ordered_json j;
    j["in_edges"] = g->edge_count();
    j["kept_edges"] = inst.sub_edge_count();
    j["girth"] = girth_to_string(girth);
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& spanner_path, int k) {
    auto g = std::make_shared<Graph>(load_graph(input));
    Graph h = load_graph(spanner_path);
    if (h.vertex_count() != g->vertex_count())
        throw InputError("spanner vertex count differs from base graph");
    EdgeMask sub = mask_from_edges(*g, h.edges());
    SpannerInstance inst(g, k, sub);
    bool ok = is_k_spanner(inst);
    auto girth = girth_value(*g, &sub);
    ordered_json j;
    j["spanner"] = ok;
    j["girth"] = girth_to_string(girth);
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_enlarge(const std::string& input, const std::string& spanner_path, int k,
                const std::string& regime_text, int slack, const std::string& trace_path,
                const std::string& out_path, std::string violation_dir) {
    auto g = std::make_shared<Graph>(load_graph(input));
    EdgeMask sub;
    if (spanner_path.empty()) {
        sub = full_mask(*g);
    } else {
        Graph h = load_graph(spanner_path);
        if (h.vertex_count() != g->vertex_count())
            throw InputError("spanner vertex count differs from base graph");
        sub = mask_from_edges(*g, h.edges());
    }
    SpannerInstance inst(g, k, sub);
    auto regime = RegimeChoice::parse(regime_text);
    auto res = enlarge_girth(inst, regime, slack);
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw InputError("cannot write " + trace_path);
        out << trace_to_json(res.trace) << "\n";
    }
    if (!out_path.empty())
        write_edge_list_file(out_path, *g, res.result.sub, input);
    ordered_json j;
    j["in_edges"] = res.trace.in_edges;
    j["out_edges"] = res.trace.out_edges;
    j["iterations"] = res.trace.iterations.size();
    j["bound_ok"] = res.trace.bound_ok;
    auto girth = girth_value(*g, &res.result.sub);
    j["girth"] = girth_to_string(girth);
    j["ok"] = res.ok();
    std::cout << j.dump() << "\n";
    if (!res.ok()) {
        if (violation_dir.empty())
            violation_dir = trace_path.empty() ? "lemma_violation" : trace_path + ".violation";
        return finish_violation(*res.violation, violation_dir);
    }
    return kExitOk;
}

int cmd_oracle_min(const std::string& input, int k, bool all) {
    Graph g = load_graph(input);
    auto report = min_spanner(g, k, all);
    ordered_json j;
    j["opt_size"] = report.opt_size;
    j["witness_count"] = report.witness_count;
    j["witnesses_capped"] = report.witnesses_capped;
    ordered_json profile = ordered_json::object();
    for (const auto& [girth, count] : report.girth_profile)
        profile[girth == kGirthInfinite ? "inf" : std::to_string(girth)] = count;
    j["girth_profile"] = profile;
    if (all) {
        ordered_json ws = ordered_json::array();
        for (const auto& w : report.witnesses) {
            ordered_json edges = ordered_json::array();
            for (int id : w) edges.push_back({g.edge(id).first, g.edge(id).second});
            ws.push_back(edges);
        }
        j["witnesses"] = ws;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_oracle_classify(int n, int k, std::uint64_t budget, std::uint64_t seed) {
    auto report = classify_pair(n, k, budget, seed);
    ordered_json j;
    j["n"] = report.n;
    j["k"] = report.k;
    j["verdict"] = pair_class_name(report.verdict);
    j["graphs_checked"] = report.graphs_checked;
    j["sampled"] = report.sampled;
    auto edges_json = [](const std::vector<Edge>& edges) {
        ordered_json out = ordered_json::array();
        for (auto [u, v] : edges) out.push_back({u, v});
        return out;
    };
    if (report.not_good_witness) j["not_good_witness"] = edges_json(*report.not_good_witness);
    if (report.low_girth_witness) j["low_girth_witness"] = edges_json(*report.low_girth_witness);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_bench(const std::string& suite, std::uint64_t seed, int trials, int slack,
              const std::string& out_path) {
    std::string report = bench_report(suite, seed, trials, slack);
    if (out_path.empty()) {
        std::cout << report;
    } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << report;
    }
    return kExitOk;
}

}  // namespace

void for_each_regime_trial(
    std::uint64_t seed, int trials, int slack,
    const std::function<void(const RegimeTrial&, const EnlargeResult&)>& fn) {
    const auto& bands = regime_bands();
    for (size_t bi = 0; bi < bands.size(); ++bi) {
        const auto& band = bands[bi];
        for (int model_ix = 0; model_ix < 2; ++model_ix) {
            for (int trial = 0; trial < trials; ++trial) {
                std::mt19937_64 rng(mix_seed(seed, bi, static_cast<std::uint64_t>(model_ix),
                                             static_cast<std::uint64_t>(trial)));
                int n = band.n_lo +
                        static_cast<int>(detail::rng_below(
                            rng, static_cast<std::uint64_t>(band.n_hi - band.n_lo + 1)));
                int k_min = ceil_frac(static_cast<long long>(band.num) * n, band.den) + slack;
                int k = k_min + static_cast<int>(detail::rng_below(
                                    rng, static_cast<std::uint64_t>(n - k_min)));
                RandomModel model;
                if (model_ix == 0) {
                    model.kind = RandomModel::Kind::CyclePlusChords;
                    model.chords = 2 + static_cast<int>(detail::rng_below(rng, 5));
                } else {
                    model.kind = RandomModel::Kind::Gnp;
                    model.p = (std::log(static_cast<double>(n)) + 1.5) / n;
                    model.require_connected = true;
                }
                auto g = std::make_shared<Graph>(gen_random(n, model, rng()));
                auto res = enlarge_girth(SpannerInstance::whole(g, k), band.regime, slack);
                fn({n, k, band.regime.name(), model_ix == 0 ? "chords" : "gnp"}, res);
            }
        }
    }
}

std::string bench_report(const std::string& suite, std::uint64_t seed, int trials, int slack) {
    if (trials < 0) throw InputError("trials must be non-negative");
    if (suite == "regimes") return bench_regimes(seed, trials, slack);
    if (suite == "gadget") return bench_gadget(trials);
    if (suite == "oracle-cross") return bench_oracle_cross(seed, trials, slack);
    throw InputError("unknown suite: " + suite);
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"greedy k-spanners, girth enlarging, and brute-force oracles"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate graphs");
    gen->require_subcommand(1);
    auto* gen_gadget = gen->add_subcommand("gadget", "hard-instance generator");
    int gg_k = 36, gg_n = 0;
    std::string gg_out = "g.edges", gg_baseline;
    gen_gadget->add_option("--k", gg_k, "stretch")->required();
    gen_gadget->add_option("--n", gg_n, "vertex count (0 = core size)");
    gen_gadget->add_option("--out", gg_out, "graph output path")->required();
    gen_gadget->add_option("--baseline", gg_baseline, "baseline spanner output path");

    auto* gen_random_cmd = gen->add_subcommand("random", "seeded random families");
    std::string gr_model = "gnp:0.3", gr_out = "g.edges";
    int gr_n = 10;
    std::uint64_t gr_seed = 0;
    bool gr_seed_set = false;
    gen_random_cmd->add_option("--model", gr_model, "gnp:P[:connected] | chords:C | greedy:K");
    gen_random_cmd->add_option("--n", gr_n, "vertex count")->required();
    gen_random_cmd->add_option("--seed", gr_seed, "rng seed")->each([&](const std::string&) {
        gr_seed_set = true;
    });
    gen_random_cmd->add_option("--out", gr_out, "output path")->required();

    // greedy
    auto* greedy_cmd = app.add_subcommand("greedy", "greedy spanner construction");
    std::string gd_input, gd_order = "lex", gd_out;
    int gd_k = 1;
    greedy_cmd->add_option("--input", gd_input, "graph path")->required();
    greedy_cmd->add_option("--k", gd_k, "stretch")->required()->check(CLI::PositiveNumber);
    greedy_cmd->add_option("--order", gd_order, "lex | random:<seed> | file:<path>");
    greedy_cmd->add_option("--out", gd_out, "spanner output path");

    // enlarge
    auto* enlarge_cmd = app.add_subcommand("enlarge", "girth enlarging transformation");
    std::string en_input, en_spanner, en_regime = "auto", en_trace, en_out, en_violation_dir;
    int en_k = 1, en_slack = 8;
    enlarge_cmd->add_option("--input", en_input, "base graph path")->required();
    enlarge_cmd->add_option("--spanner", en_spanner, "spanner path (default: whole graph)");
    enlarge_cmd->add_option("--k", en_k, "stretch")->required()->check(CLI::PositiveNumber);
    enlarge_cmd->add_option("--regime", en_regime, "auto|extreme|good|approx2|bucket:T");
    enlarge_cmd->add_option("--slack", en_slack, "threshold slack constant");
    enlarge_cmd->add_option("--trace", en_trace, "trace JSON output path");
    enlarge_cmd->add_option("--out", en_out, "result spanner output path");
    enlarge_cmd->add_option("--violation-dir", en_violation_dir,
                            "directory for serialized failing instances");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "spanner + girth check");
    std::string vf_input, vf_spanner;
    int vf_k = 1;
    verify_cmd->add_option("--input", vf_input, "base graph path")->required();
    verify_cmd->add_option("--spanner", vf_spanner, "spanner path")->required();
    verify_cmd->add_option("--k", vf_k, "stretch")->required()->check(CLI::PositiveNumber);

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
    oracle_cmd->require_subcommand(1);
    auto* om = oracle_cmd->add_subcommand("min-spanner", "exact minimum k-spanner");
    std::string om_input;
    int om_k = 1;
    bool om_all = false;
    om->add_option("--input", om_input, "graph path")->required();
    om->add_option("--k", om_k, "stretch")->required()->check(CLI::PositiveNumber);
    om->add_flag("--all", om_all, "enumerate all witnesses");
    auto* oc = oracle_cmd->add_subcommand("classify", "pair classification sweep");
    int oc_n = 5, oc_k = 2;
    std::uint64_t oc_budget = 100000, oc_seed = 0;
    bool oc_seed_set = false;
    oc->add_option("--n", oc_n, "vertex count (<= 7)")->required();
    oc->add_option("--k", oc_k, "stretch")->required()->check(CLI::PositiveNumber);
    oc->add_option("--budget", oc_budget, "max graphs before sampling (0 = exhaustive)");
    oc->add_option("--seed", oc_seed, "sampling seed")->each([&](const std::string&) {
        oc_seed_set = true;
    });

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "deterministic benchmark suites");
    std::string bn_suite, bn_out;
    std::uint64_t bn_seed = 0;
    bool bn_seed_set = false;
    int bn_trials = 10, bn_slack = 8;
    bench_cmd->add_option("--suite", bn_suite, "regimes | gadget | oracle-cross")->required();
    bench_cmd->add_option("--seed", bn_seed, "rng seed")->each([&](const std::string&) {
        bn_seed_set = true;
    });
    bench_cmd->add_option("--trials", bn_trials, "trials per configuration");
    bench_cmd->add_option("--slack", bn_slack, "threshold slack constant");
    bench_cmd->add_option("--out", bn_out, "CSV output path");

    if (args.empty()) return kExitUsage;
    std::vector<std::string> rest(args.begin() + 1, args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help() << "\n";
            return kExitOk;
        }
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gen_gadget->parsed()) {
            int n = gg_n == 0 ? gadget_core_size(gg_k) : gg_n;
            return cmd_gen_gadget(gg_k, n, gg_out, gg_baseline);
        }
        if (gen_random_cmd->parsed()) {
            if (!gr_seed_set) gr_seed = env_seed_fallback();
            return cmd_gen_random(gr_model, gr_n, gr_seed, gr_out);
        }
        if (greedy_cmd->parsed()) return cmd_greedy(gd_input, gd_k, gd_order, gd_out);
        if (enlarge_cmd->parsed())
            return cmd_enlarge(en_input, en_spanner, en_k, en_regime, en_slack, en_trace,
                               en_out, en_violation_dir);
        if (verify_cmd->parsed()) return cmd_verify(vf_input, vf_spanner, vf_k);
        if (om->parsed()) return cmd_oracle_min(om_input, om_k, om_all);
        if (oc->parsed()) {
            if (!oc_seed_set) oc_seed = env_seed_fallback();
            return cmd_oracle_classify(oc_n, oc_k, oc_budget, oc_seed);
        }
        if (bench_cmd->parsed()) {
            if (!bn_seed_set) bn_seed = env_seed_fallback();
            return cmd_bench(bn_suite, bn_seed, bn_trials, bn_slack, bn_out);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        // Parse-ish problems (missing/malformed files, unknown names) exit 2;
        // semantic invariant breaches exit 3.
        std::string what = e.what();
        bool parse_like = what.find("cannot open") != std::string::npos ||
                          what.find("cannot write") != std::string::npos ||
                          what.find("unknown") != std::string::npos ||
                          what.find("header") != std::string::npos ||
                          what.find("malformed") != std::string::npos;
        return parse_like ? kExitUsage : kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitBadInput;
    }
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run_cli(args);
}

}  // namespace spanner
