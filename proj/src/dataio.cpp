#include "gdist/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "gdist/error.hpp"
#include "gdist/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gdist {
namespace {

std::string where(const fs::path& file, std::size_t line) {
    return file.string() + ":" + std::to_string(line);
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

// Splits on commas and whitespace.
std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ',' || std::isspace(static_cast<unsigned char>(line[i]))))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ',' && !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view tok, const fs::path& file, std::size_t line) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(where(file, line) + ": expected an integer, got '" + std::string(tok) + "'");
    return v;
}

bool blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

fs::path find_with_suffix(const fs::path& dir, const std::string& suffix) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> hits;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.size() > suffix.size() && name.ends_with(suffix)) hits.push_back(entry.path());
    }
    std::sort(hits.begin(), hits.end());
    if (hits.empty()) throw IoError("missing *" + suffix + " in " + dir.string());
    return hits.front();
}

} // namespace

std::vector<int> DatasetManifest::labels() const {
    std::vector<int> out;
    out.reserve(graphs.size());
    for (const auto& g : graphs) out.push_back(g.label);
    return out;
}

Dataset load_tudataset(const fs::path& directory, std::size_t min_nodes, std::size_t max_graphs) {
    const fs::path edges_file = find_with_suffix(directory, "_A.txt");
    const std::string ds = edges_file.filename().string().substr(
        0, edges_file.filename().string().size() - std::string("_A.txt").size());
    const fs::path indicator_file = directory / (ds + "_graph_indicator.txt");
    const fs::path labels_file = directory / (ds + "_graph_labels.txt");
    if (!fs::exists(indicator_file)) throw IoError("missing " + indicator_file.string());

    // node (0-based global) -> graph id
    std::vector<long long> graph_of;
    {
        std::ifstream in = open_input(indicator_file);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (blank(line)) continue;
            const auto tok = tokens(line);
            if (tok.size() != 1)
                throw ParseError(where(indicator_file, lineno) + ": expected one graph id");
            graph_of.push_back(parse_int<long long>(tok[0], indicator_file, lineno));
        }
    }
    if (graph_of.empty()) throw InputError(indicator_file.string() + ": no nodes");

    // Graph ids in ascending order; local ids in node order.
    std::map<long long, std::vector<std::size_t>> members;
    for (std::size_t v = 0; v < graph_of.size(); ++v) members[graph_of[v]].push_back(v);
    std::vector<long long> ids;
    std::map<long long, std::size_t> slot;
    for (const auto& [id, nodes] : members) {
        slot[id] = ids.size();
        ids.push_back(id);
    }
    std::vector<std::size_t> local(graph_of.size());
    for (const auto& [id, nodes] : members)
        for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = k;

    std::vector<Graph> all;
    all.reserve(ids.size());
    for (long long id : ids) all.emplace_back(members[id].size());

    {
        std::ifstream in = open_input(edges_file);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (blank(line)) continue;
            const auto tok = tokens(line);
            if (tok.size() != 2)
                throw ParseError(where(edges_file, lineno) + ": expected two node ids");
            const auto a = parse_int<long long>(tok[0], edges_file, lineno);
            const auto b = parse_int<long long>(tok[1], edges_file, lineno);
            const auto count = static_cast<long long>(graph_of.size());
            if (a < 1 || a > count || b < 1 || b > count)
                throw Error("range", where(edges_file, lineno) + ": node id out of range [1, " +
                                         std::to_string(count) + "]");
            const auto u = static_cast<std::size_t>(a - 1);
            const auto v = static_cast<std::size_t>(b - 1);
            if (graph_of[u] != graph_of[v])
                throw Error("range", where(edges_file, lineno) + ": edge joins nodes of graphs " +
                                         std::to_string(graph_of[u]) + " and " +
                                         std::to_string(graph_of[v]));
            if (u == v) continue;
            all[slot[graph_of[u]]].set_edge_unchecked(local[u], local[v]);
        }
    }

    std::vector<long long> raw_labels;
    const bool has_labels = fs::exists(labels_file);
    if (has_labels) {
        std::ifstream in = open_input(labels_file);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (blank(line)) continue;
            const auto tok = tokens(line);
            if (tok.size() != 1) throw ParseError(where(labels_file, lineno) + ": expected one label");
            raw_labels.push_back(parse_int<long long>(tok[0], labels_file, lineno));
        }
        if (raw_labels.size() != ids.size())
            throw InputError(labels_file.string() + ": " + std::to_string(raw_labels.size()) +
                             " labels for " + std::to_string(ids.size()) + " graphs");
    }

    Dataset out;
    out.manifest.name = ds;
    out.manifest.min_nodes = min_nodes;
    out.manifest.max_graphs = max_graphs;
    out.manifest.has_labels = has_labels;
    std::vector<long long> kept_labels;
    for (std::size_t k = 0; k < all.size(); ++k) {
        if (all[k].size() < min_nodes) continue;
        if (max_graphs != 0 && out.graphs.size() == max_graphs) break;
        const std::string source = ds + "#" + std::to_string(ids[k]);
        all[k].set_source_id(source);
        out.manifest.graphs.push_back({source, all[k].size(), -1, {}});
        if (has_labels) kept_labels.push_back(raw_labels[k]);
        out.graphs.push_back(std::move(all[k]));
    }
    if (out.graphs.empty())
        throw Error("empty", directory.string() + ": no graph has at least " +
                                 std::to_string(min_nodes) + " nodes");
    if (has_labels) {
        const std::set<long long> distinct(kept_labels.begin(), kept_labels.end());
        const std::vector<long long> sorted(distinct.begin(), distinct.end());
        for (std::size_t k = 0; k < kept_labels.size(); ++k)
            out.manifest.graphs[k].label = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), kept_labels[k]) - sorted.begin());
    }
    return out;
}

Graph load_edge_list(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> declared;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t max_id = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        std::string_view view(line);
        if (first_content && view.starts_with("n=")) {
            first_content = false;
            std::string_view rest = view.substr(2);
            while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back())))
                rest.remove_suffix(1);
            declared = parse_int<std::size_t>(rest, path, lineno);
            if (*declared == 0) throw ParseError(where(path, lineno) + ": n must be positive");
            continue;
        }
        first_content = false;
        const auto tok = tokens(view);
        if (tok.size() != 2) throw ParseError(where(path, lineno) + ": expected 'u v'");
        const auto u = parse_int<std::size_t>(tok[0], path, lineno);
        const auto v = parse_int<std::size_t>(tok[1], path, lineno);
        if (declared && (u >= *declared || v >= *declared))
            throw Error("range", where(path, lineno) + ": node id exceeds declared n=" +
                                     std::to_string(*declared));
        max_id = std::max({max_id, u, v});
        edges.emplace_back(u, v);
    }
    if (!declared && edges.empty()) throw InputError(path.string() + ": empty edge list without n=");
    Graph g(declared ? *declared : max_id + 1);
    for (const auto& [u, v] : edges)
        if (u != v) g.set_edge_unchecked(u, v);
    g.set_source_id(path.filename().string());
    return g;
}

void write_edge_list(const Graph& g, const fs::path& path) {
    std::ofstream out = open_output(path);
    out << "n=" << g.size() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

void write_population_manifest(const DatasetManifest& m, const fs::path& path) {
    json doc;
    doc["name"] = m.name;
    doc["has_labels"] = m.has_labels;
    doc["graphs"] = json::array();
    for (const auto& g : m.graphs)
        doc["graphs"].push_back(
            {{"source_id", g.source_id}, {"nodes", g.nodes}, {"label", g.label}, {"file", g.file}});
    write_json(doc, path);
}

Dataset load_population_manifest(const fs::path& path) {
    std::ifstream in = open_input(path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    Dataset out;
    try {
        out.manifest.name = doc.at("name").get<std::string>();
        out.manifest.has_labels = doc.value("has_labels", false);
        for (const auto& g : doc.at("graphs")) {
            ManifestEntry e;
            e.source_id = g.at("source_id").get<std::string>();
            e.nodes = g.at("nodes").get<std::size_t>();
            e.label = g.value("label", -1);
            e.file = g.at("file").get<std::string>();
            fs::path file = e.file;
            if (file.is_relative()) file = path.parent_path() / file;
            Graph graph = load_edge_list(file);
            if (graph.size() != e.nodes)
                throw InputError(file.string() + ": manifest says " + std::to_string(e.nodes) +
                                 " nodes, file has " + std::to_string(graph.size()));
            graph.set_source_id(e.source_id);
            out.graphs.push_back(std::move(graph));
            out.manifest.graphs.push_back(std::move(e));
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (out.graphs.empty()) throw Error("empty", path.string() + ": manifest lists no graphs");
    return out;
}

std::string matrix_to_csv(const Matrix& m) {
    std::string out;
    char buf[32];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_matrix_csv(const Matrix& m, const fs::path& path) {
    std::ofstream out = open_output(path);
    out << matrix_to_csv(m);
    if (!out) throw IoError("write failed: " + path.string());
}

Matrix read_matrix_csv(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        std::vector<double> row;
        for (const auto tok : tokens(line)) {
            const std::string s(tok);
            char* end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + s.size())
                throw ParseError(where(path, lineno) + ": expected a number, got '" + s + "'");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(where(path, lineno) + ": ragged row");
        rows.push_back(std::move(row));
    }
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    return rows;
}

json to_json(const ClusterAssignment& a) { return {{"k", a.k}, {"labels", a.labels}}; }

json to_json(const TestOutcome& t) {
    return {{"statistic", t.statistic},
            {"p_value", t.p_value},
            {"reject", t.reject},
            {"alpha", t.alpha},
            {"n0", t.n0},
            {"bootstrap_samples", t.bootstrap_samples},
            {"seed", t.seed},
            {"xi_hat", t.xi_hat},
            {"null_distribution", t.null_distribution}};
}

json to_json(const SdpSolution& s, bool include_matrix) {
    json j{{"iterations", s.iterations},
           {"primal_residual", s.primal_residual},
           {"dual_residual", s.dual_residual},
           {"objective", s.objective},
           {"rho", s.rho}};
    if (include_matrix) j["x"] = to_json(s.x);
    return j;
}

json result_document(const std::string& command, Seed seed, const json& parameters,
                     const json& result) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm utc{};
    gmtime_r(&t, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return {{"tool", {{"name", kToolName}, {"version", kVersion}}},
            {"command", command},
            {"seed", seed},
            {"parameters", parameters},
            {"result", result},
            {"metadata", {{"timestamp", stamp}}}};
}

void write_json(const json& doc, const fs::path& path) {
    std::ofstream out = open_output(path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace gdist
