#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdist/clustering.hpp"
#include "gdist/graph.hpp"
#include "gdist/matrix.hpp"
#include "gdist/numerics.hpp"
#include "gdist/twosample.hpp"

namespace gdist {

struct ManifestEntry {
    std::string source_id;
    std::size_t nodes = 0;
    int label = -1; // -1 when the corpus has no labels
    std::string file; // edge-list path for sampled populations, empty otherwise
};

struct DatasetManifest {
    std::string name;
    std::vector<ManifestEntry> graphs;
    std::size_t min_nodes = 0;
    std::size_t max_graphs = 0; // 0 = no limit
    bool has_labels = false;

    std::vector<int> labels() const;
};

struct Dataset {
    std::vector<Graph> graphs;
    DatasetManifest manifest;
};

// TUDataset layout: <DS>_A.txt (1-based "i, j" edge lines over global node
// ids), <DS>_graph_indicator.txt (line k: graph id of node k), optional
// <DS>_graph_labels.txt. Reciprocal duplicates collapse to one edge and
// self-loops are dropped. Keeps graphs with >= min_nodes nodes, the first
// max_graphs of them in file order (0 = all), and remaps labels to 0..L-1.
Dataset load_tudataset(const std::filesystem::path& directory, std::size_t min_nodes = 0,
                       std::size_t max_graphs = 0);

// "u v" or "u,v" pairs with 0-based ids; an optional first line "n=<count>"
// fixes the node count (otherwise max id + 1).
Graph load_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

// Sampled-population manifest: JSON listing edge-list files and labels.
void write_population_manifest(const DatasetManifest& m, const std::filesystem::path& path);
Dataset load_population_manifest(const std::filesystem::path& path);

// Comma-separated rows, 17 significant digits, no header.
std::string matrix_to_csv(const Matrix& m);
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);
Matrix read_matrix_csv(const std::filesystem::path& path);

nlohmann::json to_json(const ClusterAssignment& a);
nlohmann::json to_json(const TestOutcome& t);
nlohmann::json to_json(const SdpSolution& s, bool include_matrix = false);
nlohmann::json to_json(const Matrix& m);

// Envelope shared by every result file: tool name/version, command, seed,
// parameters and result; the wall-clock timestamp lives only under
// "metadata" so everything else is reproducible byte for byte.
nlohmann::json result_document(const std::string& command, Seed seed,
                               const nlohmann::json& parameters, const nlohmann::json& result);
void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

} // namespace gdist
