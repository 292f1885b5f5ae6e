#include "gdist/graph.hpp"

#include <string>

#include "gdist/error.hpp"
#include "gdist/kernels.hpp"

namespace gdist {

Graph::Graph(std::size_t n) : n_(n), adj_(n * n, 0) {
    if (n == 0) throw SizeError("graph must have at least one node");
}

Graph Graph::from_edges(std::size_t n,
                        std::span<const std::pair<std::size_t, std::size_t>> edges) {
    Graph g(n);
    for (const auto& [i, j] : edges) g.add_edge(i, j);
    return g;
}

void Graph::add_edge(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_)
        throw InputError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") out of range for n=" + std::to_string(n_));
    if (i == j) throw InputError("self-loop at node " + std::to_string(i));
    set_edge_unchecked(i, j);
}

std::size_t Graph::degree(std::size_t i) const {
    return static_cast<std::size_t>(kernels::count_nonzero(row(i)));
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = degree(i);
    return d;
}

std::size_t Graph::edge_count() const {
    return static_cast<std::size_t>(kernels::count_nonzero(adj_)) / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
}

Graph Graph::relabeled(std::span<const std::size_t> perm) const {
    if (perm.size() != n_) throw SizeError("relabeled: permutation length differs from n");
    Graph g(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (has_edge(i, j)) g.set_edge_unchecked(perm[i], perm[j]);
    g.source_id_ = source_id_;
    return g;
}

Matrix Graph::adjacency_matrix() const {
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) m(i, j) = adj_[i * n_ + j];
    return m;
}

} // namespace gdist
