#include "gdist/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdist/clustering.hpp"
#include "gdist/dataio.hpp"
#include "gdist/error.hpp"
#include "gdist/graphon.hpp"
#include "gdist/kernels.hpp"
#include "gdist/parallel.hpp"
#include "gdist/transform.hpp"
#include "gdist/twosample.hpp"
#include "gdist/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gdist {
namespace {

struct PopulationArgs {
    std::vector<std::string> graphons;
    std::size_t per = 10;
    std::size_t nmin = 50;
    std::size_t nmax = 100;
    std::string manifest;
    std::string tudataset;
    std::size_t min_nodes = 0;
    std::size_t max_graphs = 0;
    std::vector<std::string> files;
};

struct LoadedPopulation {
    std::vector<Graph> graphs;
    std::optional<std::vector<int>> labels;
    std::size_t suggested_n0 = 1;
    json source;
};

struct Options {
    Seed seed = 1;
    std::size_t threads = 0;
    std::string out;
    std::optional<std::size_t> n0;

    PopulationArgs pop;

    // cluster
    std::string algorithm = "dsc";
    std::size_t k = 0;
    double sdp_tol = SdpParams{}.tol;
    std::size_t sdp_max_iter = SdpParams{}.max_iterations;
    std::size_t neighbor_rank = 0;
    std::optional<double> uniform_sigma;
    std::size_t moments = 8;
    std::string kernel = "gaussian";
    bool plain_rows = false;

    // test / power
    std::size_t bootstrap = 100;
    double alpha = 0.05;
    std::string bootstrap_source = "first";
    std::size_t trials = 200;
    std::size_t power_n = 100;
    std::size_t power_n0 = 10;

    // sample
    std::string out_dir;

    // benchmark
    std::size_t seeds = 5;
    bool skip_power = false;
};

std::vector<Graphon> parse_graphons(const std::vector<std::string>& ids) {
    std::vector<Graphon> out;
    for (const auto& id : ids) out.push_back(Graphon::parse(id));
    return out;
}

void warn_non_monotone(const std::vector<Graphon>& graphons, std::ostream& err) {
    for (const auto& w : graphons)
        if (!degree_diagnostic(w).monotone)
            err << "warning: graphon " << w.name()
                << " has a non-monotone degree function; degree sorting cannot align its latent "
                   "positions\n";
}

std::size_t min_size(const std::vector<Graph>& graphs) {
    std::size_t n = graphs.front().size();
    for (const auto& g : graphs) n = std::min(n, g.size());
    return n;
}

std::size_t safe_default_n0(std::size_t n) { return n >= 3 ? default_n0(n) : 1; }

LoadedPopulation load_population(const PopulationArgs& a, Seed seed, std::ostream& err) {
    const int sources = !a.graphons.empty() + !a.manifest.empty() + !a.tudataset.empty() +
                        !a.files.empty();
    if (sources != 1)
        throw InputError(
            "give exactly one population source: --graphons, --manifest, --tudataset or files");

    LoadedPopulation p;
    if (!a.graphons.empty()) {
        PopulationSpec spec{parse_graphons(a.graphons), a.per, a.nmin, a.nmax};
        warn_non_monotone(spec.graphons, err);
        Population pop = sample_population(spec, seed);
        p.graphs = std::move(pop.graphs);
        p.labels = std::move(pop.labels);
        // The nominal minimum size fixes n0 for simulated populations.
        p.suggested_n0 = safe_default_n0(a.nmin);
        p.source = {{"type", "graphons"},
                    {"graphons", a.graphons},
                    {"per", a.per},
                    {"nmin", a.nmin},
                    {"nmax", a.nmax}};
        return p;
    }

    Dataset ds;
    if (!a.manifest.empty()) {
        ds = load_population_manifest(a.manifest);
        p.source = {{"type", "manifest"}, {"path", a.manifest}};
    } else if (!a.tudataset.empty()) {
        ds = load_tudataset(a.tudataset, a.min_nodes, a.max_graphs);
        p.source = {{"type", "tudataset"},
                    {"path", a.tudataset},
                    {"name", ds.manifest.name},
                    {"min_nodes", a.min_nodes},
                    {"max_graphs", a.max_graphs}};
    } else {
        for (const auto& f : a.files) ds.graphs.push_back(load_edge_list(f));
        p.source = {{"type", "edge_lists"}, {"files", a.files}};
    }
    p.graphs = std::move(ds.graphs);
    if (ds.manifest.has_labels) p.labels = ds.manifest.labels();
    p.suggested_n0 = safe_default_n0(min_size(p.graphs));
    return p;
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << doc.dump(2) << '\n';
    } else {
        write_json(doc, path);
    }
}

BootstrapSource parse_source(const std::string& s) {
    if (s == "first") return BootstrapSource::First;
    if (s == "pooled") return BootstrapSource::Pooled;
    throw InputError("--bootstrap-source must be 'first' or 'pooled'");
}

struct ClusterRun {
    ClusterAssignment assignment;
    json diagnostics = json::object();
};

ClusterRun run_algorithm(const std::string& algorithm, const std::vector<Graph>& graphs,
                         std::size_t k, std::size_t n0, Seed seed, const Options& o) {
    ClusterRun r;
    DscOptions spectral;
    spectral.normalize_rows = !o.plain_rows;
    if (algorithm == "dsc") {
        r.assignment = dsc(graphs, k, n0, seed, spectral);
    } else if (algorithm == "ssdp") {
        SsdpOptions opts;
        opts.neighbor_rank = o.neighbor_rank;
        opts.uniform_sigma = o.uniform_sigma;
        opts.kernel = o.kernel == "linear" ? SimilarityKernel::Linear : SimilarityKernel::Gaussian;
        opts.sdp.tol = o.sdp_tol;
        opts.sdp.max_iterations = o.sdp_max_iter;
        const SsdpResult res = ssdp_from_distances(distance_matrix(graphs, n0), k, seed, opts);
        r.assignment = res.assignment;
        r.diagnostics = {{"sdp", to_json(res.sdp)}, {"sigma", res.similarity.sigma}};
    } else if (algorithm == "nclm") {
        r.assignment = nclm(graphs, k, seed, o.moments, spectral);
    } else {
        throw InputError("--algorithm must be dsc, ssdp or nclm");
    }
    return r;
}

json cluster_parameters(const Options& o, std::size_t k, std::size_t n0, const json& source) {
    json p{{"algorithm", o.algorithm}, {"k", k}, {"n0", n0}, {"population", source}};
    if (o.algorithm != "ssdp") p["normalize_rows"] = !o.plain_rows;
    if (o.algorithm == "ssdp") {
        p["sdp_tol"] = o.sdp_tol;
        p["sdp_max_iter"] = o.sdp_max_iter;
        p["neighbor_rank"] = o.neighbor_rank;
        p["kernel"] = o.kernel;
        if (o.uniform_sigma) p["uniform_sigma"] = *o.uniform_sigma;
    }
    if (o.algorithm == "nclm") p["moments"] = o.moments;
    return p;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.pop.graphons.empty()) throw InputError("sample needs --graphons");
    if (o.out_dir.empty()) throw InputError("sample needs --out-dir");
    PopulationSpec spec{parse_graphons(o.pop.graphons), o.pop.per, o.pop.nmin, o.pop.nmax};
    warn_non_monotone(spec.graphons, err);
    const Population pop = sample_population(spec, o.seed);
    fs::create_directories(o.out_dir);

    DatasetManifest m;
    m.name = "sampled";
    m.has_labels = true;
    for (std::size_t k = 0; k < pop.graphs.size(); ++k) {
        std::ostringstream name;
        name << "graph_" << std::setw(4) << std::setfill('0') << k << ".txt";
        write_edge_list(pop.graphs[k], fs::path(o.out_dir) / name.str());
        m.graphs.push_back({pop.graphs[k].source_id(), pop.graphs[k].size(), pop.labels[k], name.str()});
    }
    const fs::path manifest = fs::path(o.out_dir) / "manifest.json";
    write_population_manifest(m, manifest);
    const json params{{"graphons", o.pop.graphons}, {"per", o.pop.per}, {"nmin", o.pop.nmin},
                      {"nmax", o.pop.nmax}, {"out_dir", o.out_dir}};
    emit(result_document("sample", o.seed, params,
                         {{"manifest", manifest.string()}, {"graphs", pop.graphs.size()}}),
         o.out, out);
    return 0;
}

int cmd_distance(const Options& o, std::ostream& out, std::ostream& err) {
    const LoadedPopulation p = load_population(o.pop, o.seed, err);
    const std::size_t n0 = o.n0.value_or(p.suggested_n0);
    const DistanceMatrix d = distance_matrix(p.graphs, n0);
    if (o.out.empty()) {
        out << matrix_to_csv(d.values);
    } else {
        write_matrix_csv(d.values, o.out);
    }
    return 0;
}

int cmd_cluster(const Options& o, std::ostream& out, std::ostream& err) {
    const LoadedPopulation p = load_population(o.pop, o.seed, err);
    std::size_t k = o.k;
    if (k == 0) {
        if (!p.labels) throw InputError("--K is required when the population has no labels");
        k = std::set<int>(p.labels->begin(), p.labels->end()).size();
    }
    const std::size_t n0 = o.n0.value_or(p.suggested_n0);
    const ClusterRun run = run_algorithm(o.algorithm, p.graphs, k, n0, o.seed, o);

    json result{{"labels", run.assignment.labels}, {"k", k}, {"n0", n0}};
    std::vector<std::string> ids;
    for (const auto& g : p.graphs) ids.push_back(g.source_id());
    result["source_ids"] = ids;
    if (p.labels) {
        result["true_labels"] = *p.labels;
        result["error"] = hungarian_error(*p.labels, run.assignment.labels);
        result["ari"] = ari(*p.labels, run.assignment.labels);
    }
    if (!run.diagnostics.empty()) result["diagnostics"] = run.diagnostics;
    emit(result_document("cluster", o.seed, cluster_parameters(o, k, n0, p.source), result), o.out,
         out);
    return 0;
}

int cmd_test(const Options& o, std::ostream& out, std::ostream&) {
    if (o.pop.files.size() != 2) throw InputError("test needs exactly two edge-list files");
    const Graph g1 = load_edge_list(o.pop.files[0]);
    const Graph g2 = load_edge_list(o.pop.files[1]);
    const std::size_t n0 = o.n0.value_or(safe_default_n0(std::min(g1.size(), g2.size())));
    const TestOutcome t =
        two_sample_test(g1, g2, n0, o.bootstrap, o.alpha, o.seed, parse_source(o.bootstrap_source));
    const json params{{"files", o.pop.files},         {"n0", n0},
                      {"bootstrap", o.bootstrap},     {"alpha", o.alpha},
                      {"bootstrap_source", o.bootstrap_source}};
    emit(result_document("test", o.seed, params, to_json(t)), o.out, out);
    return 0;
}

json power_json(const std::vector<std::string>& ids, const Matrix& power) {
    return {{"graphons", ids}, {"power", to_json(power)}};
}

int cmd_power(const Options& o, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> ids =
        o.pop.graphons.empty() ? std::vector<std::string>{"W1", "W2", "W3", "W4"} : o.pop.graphons;
    const std::vector<Graphon> graphons = parse_graphons(ids);
    warn_non_monotone(graphons, err);
    PowerSettings s;
    s.n = o.power_n;
    s.n0 = o.n0.value_or(o.power_n0);
    s.trials = o.trials;
    s.bootstrap = o.bootstrap;
    s.alpha = o.alpha;
    s.source = parse_source(o.bootstrap_source);
    const Matrix power = power_matrix(graphons, s, o.seed);
    const json params{{"graphons", ids},       {"n", s.n},         {"n0", s.n0},
                      {"trials", s.trials},    {"bootstrap", s.bootstrap}, {"alpha", s.alpha},
                      {"bootstrap_source", o.bootstrap_source}};
    emit(result_document("power", o.seed, params, power_json(ids, power)), o.out, out);
    return 0;
}

int cmd_benchmark(const Options& o, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> ids =
        o.pop.graphons.empty() ? std::vector<std::string>{"W1", "W2", "W3", "W4"} : o.pop.graphons;
    const std::vector<Graphon> graphons = parse_graphons(ids);
    warn_non_monotone(graphons, err);
    const std::size_t n0 = o.n0.value_or(safe_default_n0(o.pop.nmin));

    // Every combination of three or more graphons, in lexicographic order.
    std::vector<std::vector<std::size_t>> combos;
    const std::size_t g = graphons.size();
    for (std::size_t size = std::min<std::size_t>(3, g); size <= g; ++size) {
        std::vector<bool> pick(g, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            std::vector<std::size_t> c;
            for (std::size_t i = 0; i < g; ++i)
                if (pick[i]) c.push_back(i);
            combos.push_back(std::move(c));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }

    const std::vector<std::string> algorithms{"dsc", "ssdp", "nclm"};
    json rows = json::array();
    std::map<std::string, std::pair<double, std::size_t>> overall;
    for (std::size_t c = 0; c < combos.size(); ++c) {
        PopulationSpec spec;
        std::vector<std::string> names;
        for (std::size_t i : combos[c]) {
            spec.graphons.push_back(graphons[i]);
            names.push_back(ids[i]);
        }
        spec.per_graphon = o.pop.per;
        spec.min_nodes = o.pop.nmin;
        spec.max_nodes = o.pop.nmax;
        json per_alg = json::object();
        for (const auto& alg : algorithms) {
            std::vector<double> errors, aris;
            for (std::size_t s = 0; s < o.seeds; ++s) {
                const Seed seed = derive_seed(derive_seed(o.seed, c), s);
                const Population pop = sample_population(spec, seed);
                const ClusterRun run = run_algorithm(alg, pop.graphs, spec.graphons.size(), n0, seed, o);
                errors.push_back(hungarian_error(pop.labels, run.assignment.labels));
                aris.push_back(ari(pop.labels, run.assignment.labels));
            }
            const double mean_err = std::accumulate(errors.begin(), errors.end(), 0.0) /
                                    static_cast<double>(errors.size());
            const double mean_ari =
                std::accumulate(aris.begin(), aris.end(), 0.0) / static_cast<double>(aris.size());
            per_alg[alg] = {{"errors", errors}, {"mean_error", mean_err}, {"aris", aris},
                            {"mean_ari", mean_ari}};
            overall[alg].first += mean_err;
            overall[alg].second += 1;
        }
        rows.push_back({{"graphons", names}, {"results", per_alg}});
    }
    json summary = json::object();
    for (const auto& [alg, acc] : overall) summary[alg] = acc.first / static_cast<double>(acc.second);

    json result{{"clustering", {{"combinations", rows}, {"mean_error", summary}}}};
    if (!o.skip_power) {
        PowerSettings s;
        s.n = o.power_n;
        s.n0 = o.power_n0;
        s.trials = o.trials;
        s.bootstrap = o.bootstrap;
        s.alpha = o.alpha;
        s.source = parse_source(o.bootstrap_source);
        result["power"] = power_json(ids, power_matrix(graphons, s, derive_seed(o.seed, 1u << 20)));
        result["power"]["n"] = s.n;
        result["power"]["n0"] = s.n0;
        result["power"]["trials"] = s.trials;
    }
    const json params{{"graphons", ids},         {"per", o.pop.per},  {"nmin", o.pop.nmin},
                      {"nmax", o.pop.nmax},      {"n0", n0},          {"seeds", o.seeds},
                      {"trials", o.trials},      {"bootstrap", o.bootstrap},
                      {"power_n", o.power_n},    {"power_n0", o.power_n0},
                      {"skip_power", o.skip_power}};
    emit(result_document("benchmark", o.seed, params, result), o.out, out);
    return 0;
}

void error_line(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Graphon-based distances, clustering and two-sample tests for graph populations",
                 "gdist"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.add_option("--threads", o.threads,
                   "Worker threads (default: GRAPHON_DIST_THREADS or all cores)");

    auto common = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--out", o.out, "Output file (default: stdout)");
    };
    auto population = [&](CLI::App* sub) {
        sub->add_option("--graphons", o.pop.graphons, "Simulate from built-in graphons W1..W4")
            ->delimiter(',');
        sub->add_option("--per", o.pop.per, "Graphs per graphon")->check(CLI::PositiveNumber);
        sub->add_option("--nmin", o.pop.nmin, "Smallest graph size")->check(CLI::PositiveNumber);
        sub->add_option("--nmax", o.pop.nmax, "Largest graph size")->check(CLI::PositiveNumber);
    };
    auto datasets = [&](CLI::App* sub) {
        sub->add_option("--manifest", o.pop.manifest, "Population manifest written by `sample`");
        sub->add_option("--tudataset", o.pop.tudataset, "TUDataset-format directory");
        sub->add_option("--min-nodes", o.pop.min_nodes, "Drop dataset graphs below this size");
        sub->add_option("--max-graphs", o.pop.max_graphs, "Keep at most this many graphs (0 = all)");
        sub->add_option("files", o.pop.files, "Edge-list files");
    };
    auto n0_option = [&](CLI::App* sub) {
        sub->add_option("--n0", o.n0, "Histogram side (default from the smallest graph size)")
            ->check(CLI::PositiveNumber);
    };
    auto bootstrap_options = [&](CLI::App* sub) {
        sub->add_option("--bootstrap", o.bootstrap, "Bootstrap replicates")->check(CLI::Range(20, 1000000));
        sub->add_option("--alpha", o.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--bootstrap-source", o.bootstrap_source, "Null model source: first|pooled")
            ->check(CLI::IsMember({"first", "pooled"}));
    };

    CLI::App* sample = app.add_subcommand("sample", "Sample a labelled population from graphons");
    common(sample);
    population(sample);
    sample->add_option("--out-dir", o.out_dir, "Directory for edge lists and manifest.json");

    CLI::App* distance = app.add_subcommand("distance", "Pairwise graph distance matrix as CSV");
    common(distance);
    population(distance);
    datasets(distance);
    n0_option(distance);

    CLI::App* cluster = app.add_subcommand("cluster", "Cluster a population of graphs");
    common(cluster);
    population(cluster);
    datasets(cluster);
    n0_option(cluster);
    cluster->add_option("--algorithm", o.algorithm, "dsc | ssdp | nclm")
        ->check(CLI::IsMember({"dsc", "ssdp", "nclm"}));
    cluster->add_option("--K", o.k, "Number of clusters (default: number of true labels)");
    cluster->add_option("--sdp-tol", o.sdp_tol, "SDP residual tolerance")->check(CLI::PositiveNumber);
    cluster->add_option("--sdp-max-iter", o.sdp_max_iter, "SDP iteration cap")->check(CLI::PositiveNumber);
    cluster->add_option("--neighbor-rank", o.neighbor_rank,
                        "Nearest-neighbour rank for local scaling (default 5)");
    cluster->add_option("--uniform-sigma", o.uniform_sigma, "Use one fixed bandwidth instead")
        ->check(CLI::PositiveNumber);
    cluster->add_option("--moments", o.moments, "Log moments for nclm")->check(CLI::PositiveNumber);
    cluster->add_option("--kernel", o.kernel, "SSDP similarity kernel: gaussian | linear")
        ->check(CLI::IsMember({"gaussian", "linear"}));
    cluster->add_flag("--plain-rows", o.plain_rows,
                      "dsc/nclm: cluster raw eigenvector rows (no unit-length scaling)");

    CLI::App* test = app.add_subcommand("test", "Two-sample test on two edge-list files");
    common(test);
    n0_option(test);
    bootstrap_options(test);
    test->add_option("files", o.pop.files, "Two edge-list files")->expected(2);

    CLI::App* power = app.add_subcommand("power", "Power matrix of the two-sample test");
    common(power);
    power->add_option("--graphons", o.pop.graphons, "Graphons (default W1,W2,W3,W4)")->delimiter(',');
    power->add_option("--n", o.power_n, "Size of the first graph (second has 2n)")
        ->check(CLI::PositiveNumber);
    n0_option(power);
    power->add_option("--trials", o.trials, "Trials per entry")->check(CLI::Range(20, 100000000));
    bootstrap_options(power);

    CLI::App* bench = app.add_subcommand("benchmark", "Simulated clustering and power protocols");
    common(bench);
    population(bench);
    n0_option(bench);
    bench->add_option("--seeds", o.seeds, "Repetitions per combination")->check(CLI::PositiveNumber);
    bench->add_option("--trials", o.trials, "Power trials per entry")->check(CLI::Range(20, 100000000));
    bench->add_option("--power-n", o.power_n, "First graph size in the power protocol");
    bench->add_option("--power-n0", o.power_n0, "Histogram side in the power protocol");
    bench->add_flag("--skip-power", o.skip_power, "Only run the clustering protocol");
    bench->add_option("--sdp-tol", o.sdp_tol, "SDP residual tolerance")->check(CLI::PositiveNumber);
    bench->add_option("--sdp-max-iter", o.sdp_max_iter, "SDP iteration cap")->check(CLI::PositiveNumber);
    bootstrap_options(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        error_line(err, "usage", e.what());
        return 2;
    }

    set_thread_count(o.threads);

    try {
        if (*sample) return cmd_sample(o, out, err);
        if (*distance) return cmd_distance(o, out, err);
        if (*cluster) return cmd_cluster(o, out, err);
        if (*test) return cmd_test(o, out, err);
        if (*power) return cmd_power(o, out, err);
        if (*bench) return cmd_benchmark(o, out, err);
    } catch (const Error& e) {
        error_line(err, e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        error_line(err, "internal", e.what());
        return 1;
    }
    return 1;
}

} // namespace gdist
