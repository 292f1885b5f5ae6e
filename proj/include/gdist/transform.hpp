#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gdist/graph.hpp"

namespace gdist {

// Node order with non-decreasing degrees; ties keep the original index order.
struct SortPermutation {
    std::vector<std::size_t> order;
};

SortPermutation degree_sort(const Graph& g);

// Degree-sorted block averages. With h = floor(n / n0), block (i, j) covers
// sorted rows i*h .. i*h+h-1 and the same columns; the n - n0*h highest-degree
// nodes are dropped so every block is exactly h x h.
// Throws SizeError when n0 == 0 or n0 > n.
Histogram histogram(const Graph& g, std::size_t n0);

// (1/n0) * ||A1 - A2||_F between histograms of equal side.
double histogram_distance(const Histogram& a, const Histogram& b);

double graph_distance(const Graph& a, const Graph& b, std::size_t n0);

// floor(sqrt(n / log10 n)), at least 1. Requires n >= 3.
std::size_t default_n0(std::size_t n);

// Component i (1-based) is log(trace((A/n)^i)); nullopt marks a
// non-positive trace (odd moments of bipartite graphs, empty graphs).
using LogMoments = std::vector<std::optional<double>>;
LogMoments log_moments(const Graph& g, std::size_t count);

} // namespace gdist
