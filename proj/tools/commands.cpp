#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "config.hpp"
#include "plurality/experiment.hpp"
#include "plurality/spectral.hpp"

namespace plurality::cli {

namespace {

std::string hex_hash(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// Header block embedded in every output file.
void stamp(nlohmann::json& doc, const Config& cfg, bool timestamp) {
    doc["config_hash"] = hex_hash(cfg.hash());
    if (timestamp) doc["timestamp"] = iso_timestamp();
}

std::string csv_header(const Config& cfg, bool timestamp) {
    std::string head = "# config_hash=" + hex_hash(cfg.hash()) + "\n";
    if (timestamp) head += "# timestamp=" + iso_timestamp() + "\n";
    return head;
}

int cmd_gen(const GraphDescriptor& desc, const std::string& out_path, bool spectral) {
    Graph g = desc.build();
    if (!out_path.empty()) save_edge_list(g, out_path);
    ValidationReport rep = validate(g);
    nlohmann::json info = {
        {"family", desc.describe()},
        {"n", g.vertex_count()},
        {"m", g.edge_count()},
        {"connected", rep.connected},
        {"bipartite", rep.bipartite},
    };
    if (rep.regular_degree) info["d"] = *rep.regular_degree;
    if (spectral) info["lambda"] = second_eigenvalue(g);
    std::cout << info.dump(2) << '\n';
    return 0;
}

int cmd_spectral(const std::string& graph_path, double tol) {
    Graph g = load_edge_list(graph_path);
    EigenOptions opts;
    opts.tol = tol;
    SpectralProfile prof = spectral_profile(g, opts);
    double pi_min = prof.pi.empty() ? 0 : *std::min_element(prof.pi.begin(), prof.pi.end());
    double pi_max = prof.pi.empty() ? 0 : *std::max_element(prof.pi.begin(), prof.pi.end());
    nlohmann::json info = {
        {"n", g.vertex_count()}, {"m", g.edge_count()},
        {"lambda", prof.lambda}, {"method", prof.method},
        {"pi_min", pi_min},      {"pi_max", pi_max},
    };
    std::cout << info.dump(2) << '\n';
    return 0;
}

int cmd_verify_lemmas(const std::string& graph_path, int samples, std::uint64_t seed,
                      std::optional<double> lambda_override, const std::string& out_path) {
    Graph g = load_edge_list(graph_path);
    InequalityReport report = check_section2(g, samples, seed, lambda_override);
    std::string json = report.to_json();
    if (out_path.empty()) {
        std::cout << json << '\n';
    } else {
        write_text(out_path, json + "\n");
    }
    int violations = report.total_violations();
    if (violations > 0) {
        std::cerr << "verify-lemmas: " << violations << " violation(s) beyond tolerance\n";
        return 1;
    }
    return 0;
}

int cmd_vote(const Config& cfg, bool timestamp) {
    Graph g = cfg.graph_descriptor().build();
    ExperimentSpec spec = cfg.experiment_spec();
    OpinionConfig initial = place_opinions(g, spec.sizes, spec.placement, spec.seed);
    RunTrace trace = run(g, initial, spec.protocol, spec.max_rounds, spec.seed);
    if (trace.outcome == Outcome::consensus) {
        std::cout << "consensus at round " << trace.rounds_used << ", winner class "
                  << trace.winner << '\n';
    } else {
        std::cout << "timeout after " << trace.rounds_used << " rounds\n";
    }
    if (cfg.has("output", "json")) {
        nlohmann::json doc = nlohmann::json::parse(trace.to_json_line());
        stamp(doc, cfg, timestamp);
        write_text(cfg.get_string("output", "json"), doc.dump() + "\n");
    }
    if (cfg.has("output", "csv")) {
        write_text(cfg.get_string("output", "csv"),
                   csv_header(cfg, timestamp) + trace.to_csv());
    }
    return 0;
}

int cmd_experiment(const Config& cfg, bool timestamp, int workers) {
    ExperimentSpec spec = cfg.experiment_spec();
    if (workers > 0) spec.workers = workers;
    CampaignOutput out = run_campaign(spec);
    stamp(out.json, cfg, timestamp);
    std::cout << out.headline << '\n';
    if (out.json.contains("hypotheses")) {
        std::cout << "hypotheses: " << out.json["hypotheses"].dump() << '\n';
    }
    if (cfg.has("output", "json")) {
        write_text(cfg.get_string("output", "json"), out.json.dump(2) + "\n");
    }
    if (cfg.has("output", "csv")) {
        write_text(cfg.get_string("output", "csv"), csv_header(cfg, timestamp) + out.csv);
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"plurality consensus voting on graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph and write its edge list");
    std::string family, out_path, graph_path;
    int n = 0, d = 0, rows = 0, cols = 0;
    std::uint64_t seed = 0;
    bool spectral_flag = false;
    gen->add_option("--family", family, "complete-with-loops|odd-cycle|random-regular|torus-grid")
        ->required();
    gen->add_option("--n", n);
    gen->add_option("--d", d);
    gen->add_option("--rows", rows);
    gen->add_option("--cols", cols);
    gen->add_option("--seed", seed);
    gen->add_option("--out", out_path, "edge-list output path");
    gen->add_flag("--spectral", spectral_flag, "also compute lambda");

    // spectral
    auto* spectral = app.add_subcommand("spectral", "stationary distribution and lambda");
    double tol = 1e-10;
    spectral->add_option("graph", graph_path, "edge-list file")->required();
    spectral->add_option("--tol", tol);

    // verify-lemmas
    auto* verify = app.add_subcommand("verify-lemmas", "check the mixing/drift inequalities");
    int samples = 100;
    std::uint64_t vseed = 1;
    double lambda_override = -1.0;
    std::string report_out;
    verify->add_option("graph", graph_path, "edge-list file")->required();
    verify->add_option("--samples", samples);
    verify->add_option("--seed", vseed);
    verify->add_option("--lambda-override", lambda_override,
                       "use this lambda instead of solving (falsification probe)");
    verify->add_option("--out", report_out, "JSON report path (default stdout)");

    // vote / experiment
    auto* vote = app.add_subcommand("vote", "single fully-seeded voting run");
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo campaign");
    std::string config_path;
    std::vector<std::string> overrides;
    bool no_timestamp = false;
    int workers = 0;
    for (auto* sub : {vote, experiment}) {
        sub->add_option("--config", config_path, "config file")->required();
        sub->add_option("--set", overrides, "override, e.g. --set campaign.trials=500");
        sub->add_flag("--no-timestamp", no_timestamp, "omit timestamps from outputs");
    }
    experiment->add_option("--workers", workers, "worker thread cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            GraphDescriptor desc;
            using F = GraphDescriptor::Family;
            if (family == "complete-with-loops") desc.family = F::complete_with_loops;
            else if (family == "odd-cycle") desc.family = F::odd_cycle;
            else if (family == "random-regular") desc.family = F::random_regular;
            else if (family == "torus-grid") desc.family = F::torus_grid;
            else throw std::runtime_error("unknown family '" + family + "'");
            desc.n = n;
            desc.d = d;
            desc.rows = rows;
            desc.cols = cols;
            desc.seed = seed;
            return cmd_gen(desc, out_path, spectral_flag);
        }
        if (spectral->parsed()) return cmd_spectral(graph_path, tol);
        if (verify->parsed()) {
            std::optional<double> ov;
            if (lambda_override >= 0.0) ov = lambda_override;
            return cmd_verify_lemmas(graph_path, samples, vseed, ov, report_out);
        }
        Config cfg = Config::parse_file(config_path);
        for (const auto& kv : overrides) {
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos) throw std::runtime_error("--set expects key=value");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (vote->parsed()) return cmd_vote(cfg, !no_timestamp);
        return cmd_experiment(cfg, !no_timestamp, workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace plurality::cli
