#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gdist/matrix.hpp"

namespace gdist {

// Simple undirected graph on nodes 0..n-1, stored as a dense n x n byte
// adjacency matrix (symmetric, zero diagonal). Populations here have at most
// a few thousand nodes per graph, so O(n^2) storage is fine and keeps block
// sums contiguous.
class Graph {
public:
    explicit Graph(std::size_t n);
    static Graph from_edges(std::size_t n,
                            std::span<const std::pair<std::size_t, std::size_t>> edges);

    std::size_t size() const noexcept { return n_; }

    bool has_edge(std::size_t i, std::size_t j) const noexcept { return adj_[i * n_ + j] != 0; }
    // Adds {i, j}; idempotent. Throws InputError on self-loops or bad ids.
    void add_edge(std::size_t i, std::size_t j);
    void set_edge_unchecked(std::size_t i, std::size_t j) noexcept {
        adj_[i * n_ + j] = 1;
        adj_[j * n_ + i] = 1;
    }

    std::span<const std::uint8_t> row(std::size_t i) const noexcept {
        return {adj_.data() + i * n_, n_};
    }

    std::size_t degree(std::size_t i) const;
    std::vector<std::size_t> degrees() const;
    std::size_t edge_count() const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    // Relabels node v as perm[v].
    Graph relabeled(std::span<const std::size_t> perm) const;

    Matrix adjacency_matrix() const;

    const std::string& source_id() const noexcept { return source_id_; }
    void set_source_id(std::string id) { source_id_ = std::move(id); }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    std::size_t n_;
    std::vector<std::uint8_t> adj_;
    std::string source_id_;
};

// n0 x n0 block-averaged edge densities; the common representation every
// graph and graphon is mapped to before distances are taken.
struct Histogram {
    Matrix values;

    std::size_t side() const noexcept { return values.rows(); }
};

} // namespace gdist
