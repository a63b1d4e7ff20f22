// hbdiff: biased exchange-based diffusion on hyper-bag-graphs.
// Subcommands: gen (random graphs), run (bias experiment suite),
// curves (paired ranking comparison), ingest (file conversion/validation).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hbdiff/hbdiff.hpp"

namespace fs = std::filesystem;
using namespace hbdiff;

namespace {

struct GenFlags {
    GeneratorConfig cfg;

    void attach(CLI::App* app) {
        app->add_option("--n-pool", cfg.n_pool, "potential vertex pool size");
        app->add_option("--edges", cfg.p, "number of hb-edges");
        app->add_option("--max-mcard", cfg.max_mcard, "maximum m-cardinality per hb-edge");
        app->add_option("--groups", cfg.n_groups, "number of groups");
        app->add_option("--group-seed-size", cfg.group_seed_size, "seed pool size per group");
        app->add_option("--seeds-per-edge", cfg.seeds_per_edge, "group seeds in each hb-edge");
        app->add_option("--central", cfg.n_central, "number of central vertices");
        app->add_option("--central-prob", cfg.central_prob,
                        "probability an hb-edge gets a central vertex");
        app->add_option("--mult-max", cfg.multiplicity_max, "maximum member multiplicity");
        app->add_flag("--fixed-seed-pair", cfg.fixed_seed_pair,
                      "use one fixed seed pair per group instead of sampling");
    }
};

nlohmann::json suite_to_json(const ExperimentSuite& s) {
    nlohmann::json j;
    auto& exps = j["experiments"] = nlohmann::json::array();
    for (const auto& e : s.experiments)
        exps.push_back({e.vertex.str(), e.hbedge.str()});
    j["iterations"] = s.iterations;
    j["tie_eps"] = s.tie_eps;
    j["rank_from_stationary"] = s.rank_from_stationary;
    return j;
}

ExperimentSuite load_suite(const std::string& name) {
    if (name == "paper15") return paper15_suite();
    std::ifstream in(name);
    if (!in) throw ParseError("cannot open suite file " + name);
    nlohmann::json j;
    in >> j;
    return suite_from_json(j);
}

int cmd_gen(const GenFlags& gf, std::uint64_t seed, std::size_t count, const std::string& out) {
    fs::create_directories(out);
    auto graphs = batch(gf.cfg, count, seed);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto s = std::to_string(seed + i);
        write_hbgraph_json(graphs[i].graph, out + "/graph" + s + ".json");
        std::ofstream meta(out + "/graph" + s + "_meta.json");
        meta << metadata_to_json(graphs[i]).dump(2) << "\n";
    }
    std::cout << "wrote " << graphs.size() << " hb-graph(s) to " << out << "\n";
    return 0;
}

int cmd_run(const GenFlags& gf, std::uint64_t seed, std::size_t count,
            const std::vector<std::string>& inputs, const std::string& suite_name,
            int iterations, double tie_eps, bool use_pi, const std::string& out,
            unsigned threads) {
    ExperimentSuite suite = load_suite(suite_name);
    suite.iterations = iterations;
    suite.tie_eps = tie_eps;
    suite.rank_from_stationary = use_pi;

    std::vector<HbGraph> graphs;
    std::vector<std::string> names;
    if (inputs.empty()) {
        for (auto& gg : batch(gf.cfg, count, seed)) {
            names.push_back("graph" + std::to_string(seed + graphs.size()));
            graphs.push_back(std::move(gg.graph));
        }
    } else {
        for (const auto& path : inputs) {
            graphs.push_back(read_hbgraph_json(path));
            names.push_back(fs::path(path).stem().string());
        }
    }

    auto rep = run_suite(graphs, suite, threads);

    fs::create_directories(out);
    fs::create_directories(out + "/rankings");
    {
        nlohmann::json cfg = suite_to_json(suite);
        cfg["graphs"] = names;
        cfg["seed"] = seed;
        std::ofstream f(out + "/config.json");
        f << cfg.dump(2) << "\n";
    }
    const std::size_t m = rep.experiment_count;
    if (m >= 2) {
        write_matrix_csv(rep.strict_vertices, m, out + "/matrix_strict_vertices.csv");
        write_matrix_csv(rep.large_vertices, m, out + "/matrix_large_vertices.csv");
        write_matrix_csv(rep.strict_hbedges, m, out + "/matrix_strict_hbedges.csv");
        write_matrix_csv(rep.large_hbedges, m, out + "/matrix_large_hbedges.csv");
    }
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            const std::string base = out + "/rankings/" + names[i] + "_exp" + std::to_string(k + 1);
            write_ranking_csv(rep.per_graph[i].vertex_rankings[k], base + "_v.csv");
            write_ranking_csv(rep.per_graph[i].hbedge_rankings[k], base + "_e.csv");
        }
    }
    {
        nlohmann::json diag;
        diag["max_conservation_residual"] = rep.max_residual;
        diag["runtime_seconds"] = rep.runtime_seconds;
        diag["graph_count"] = rep.graph_count;
        diag["experiment_count"] = rep.experiment_count;
        std::ofstream f(out + "/diagnostics.json");
        f << diag.dump(2) << "\n";
    }
    std::cout << "suite of " << m << " experiment(s) over " << graphs.size()
              << " graph(s) written to " << out << "\n";
    return 0;
}

int cmd_curves(const GenFlags& gf, std::uint64_t seed, const std::string& input, int exp_a,
               int exp_b, const std::string& entity, int iterations, double tie_eps,
               const std::string& out) {
    auto suite = paper15_suite();
    auto pick = [&](int k) -> BiasPair {
        if (k < 1 || k > static_cast<int>(suite.experiments.size()))
            throw std::invalid_argument("experiment index out of range (1..15)");
        return suite.experiments[k - 1];
    };
    HbGraph g = input.empty() ? [&] {
        auto cfg = gf.cfg;
        cfg.rng_seed = seed;
        return generate(cfg).graph;
    }()
                              : read_hbgraph_json(input);
    const auto kind = entity == "hbedges" ? EntityKind::hbedges : EntityKind::vertices;
    auto rows = rank_curves(g, pick(exp_a), pick(exp_b), kind, iterations, tie_eps);
    if (out.empty() || out == "-") {
        write_curves_csv(rows, std::cout);
    } else {
        fs::create_directories(fs::path(out).parent_path().empty()
                                   ? fs::path(".")
                                   : fs::path(out).parent_path());
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        write_curves_csv(rows, f);
    }
    return 0;
}

int cmd_ingest(const std::string& path, const std::string& format, const std::string& out) {
    HbGraph g = format == "cooc_csv" ? ingest_cooc_csv_file(path) : read_hbgraph_json(path);
    if (out.empty()) {
        std::cout << "valid hb-graph: n=" << g.vertex_count() << " p=" << g.edge_count()
                  << " nnz=" << g.nonzero_count() << "\n";
    } else {
        write_hbgraph_json(g, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biased exchange-based diffusion on hyper-bag-graphs"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::size_t count = 20;
    int iterations = 200;
    double tie_eps = 1e-10;
    std::string out;

    auto* gen = app.add_subcommand("gen", "generate random grouped hb-graphs");
    GenFlags gen_flags;
    gen_flags.attach(gen);
    gen->add_option("--seed", seed, "base rng seed");
    gen->add_option("--graphs", count, "number of graphs");
    gen->add_option("--out", out, "output directory")->required();

    auto* runc = app.add_subcommand("run", "run a bias experiment suite");
    GenFlags run_flags;
    run_flags.attach(runc);
    std::vector<std::string> inputs;
    std::string suite_name = "paper15";
    bool use_pi = false;
    unsigned threads = 0;
    runc->add_option("--seed", seed, "base rng seed for generated graphs");
    runc->add_option("--graphs", count, "number of generated graphs (default 20; paper uses 100)");
    runc->add_option("--input", inputs, "hb-graph JSON files instead of generation");
    runc->add_option("--suite", suite_name, "paper15 or a suite JSON file");
    runc->add_option("--iterations", iterations, "diffusion steps per experiment");
    runc->add_option("--tie-eps", tie_eps, "relative tie tolerance for rankings");
    runc->add_flag("--use-pi", use_pi, "rank the stationary state instead of alpha_t");
    runc->add_option("--threads", threads, "worker threads (0 = hardware)");
    runc->add_option("--out", out, "output directory")->required();

    auto* curves = app.add_subcommand("curves", "paired ranking comparison of two experiments");
    GenFlags curve_flags;
    curve_flags.attach(curves);
    std::string input, entity = "vertices";
    int exp_a = 1, exp_b = 4;
    curves->add_option("--seed", seed, "rng seed for a generated graph");
    curves->add_option("--input", input, "hb-graph JSON file instead of generation");
    curves->add_option("--exp-a", exp_a, "first experiment index (1..15)");
    curves->add_option("--exp-b", exp_b, "second experiment index (1..15)");
    curves->add_option("--entity", entity, "vertices|hbedges")
        ->check(CLI::IsMember({"vertices", "hbedges"}));
    curves->add_option("--iterations", iterations, "diffusion steps");
    curves->add_option("--tie-eps", tie_eps, "relative tie tolerance");
    curves->add_option("--out", out, "output CSV (default stdout)");

    auto* ingest = app.add_subcommand("ingest", "validate/convert an hb-graph file");
    std::string in_path, format = "hbjson";
    ingest->add_option("path", in_path, "input file")->required();
    ingest->add_option("--format", format, "hbjson|cooc_csv")
        ->check(CLI::IsMember({"hbjson", "cooc_csv"}));
    ingest->add_option("--out", out, "normalized hb-graph JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_flags, seed, count, out);
        if (runc->parsed())
            return cmd_run(run_flags, seed, count, inputs, suite_name, iterations, tie_eps,
                           use_pi, out, threads);
        if (curves->parsed())
            return cmd_curves(curve_flags, seed, input, exp_a, exp_b, entity, iterations,
                              tie_eps, out);
        if (ingest->parsed()) return cmd_ingest(in_path, format, out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
