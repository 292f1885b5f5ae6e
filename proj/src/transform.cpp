#include "gdist/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gdist/error.hpp"
#include "gdist/kernels.hpp"

namespace gdist {

SortPermutation degree_sort(const Graph& g) {
    const std::vector<std::size_t> deg = g.degrees();
    SortPermutation p;
    p.order.resize(g.size());
    std::iota(p.order.begin(), p.order.end(), std::size_t{0});
    std::stable_sort(p.order.begin(), p.order.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
    return p;
}

Histogram histogram(const Graph& g, std::size_t n0) {
    const std::size_t n = g.size();
    if (n0 == 0) throw SizeError("histogram: n0 must be positive");
    if (n0 > n)
        throw SizeError("histogram: n0=" + std::to_string(n0) + " exceeds graph size n=" +
                        std::to_string(n));
    const std::size_t h = n / n0;
    const std::size_t kept = n0 * h;
    const SortPermutation perm = degree_sort(g);

    Histogram out{Matrix(n0, n0)};
    const auto cells = static_cast<double>(h * h);
    std::vector<std::uint8_t> sorted_row(kept);
    std::vector<std::uint64_t> block_sums(n0);
    for (std::size_t bi = 0; bi < n0; ++bi) {
        std::fill(block_sums.begin(), block_sums.end(), 0);
        for (std::size_t r = bi * h; r < bi * h + h; ++r) {
            const auto row = g.row(perm.order[r]);
            for (std::size_t c = 0; c < kept; ++c) sorted_row[c] = row[perm.order[c]];
            for (std::size_t bj = 0; bj < n0; ++bj)
                block_sums[bj] += kernels::count_nonzero(
                    std::span<const std::uint8_t>(sorted_row).subspan(bj * h, h));
        }
        for (std::size_t bj = 0; bj < n0; ++bj)
            out.values(bi, bj) = static_cast<double>(block_sums[bj]) / cells;
    }
    return out;
}

double histogram_distance(const Histogram& a, const Histogram& b) {
    if (a.side() != b.side())
        throw SizeError("histogram_distance: sides differ (" + std::to_string(a.side()) + " vs " +
                        std::to_string(b.side()) + ")");
    return frobenius_distance(a.values, b.values) / static_cast<double>(a.side());
}

double graph_distance(const Graph& a, const Graph& b, std::size_t n0) {
    if (n0 > std::min(a.size(), b.size()))
        throw SizeError("graph_distance: n0=" + std::to_string(n0) + " exceeds min(n1, n2)=" +
                        std::to_string(std::min(a.size(), b.size())));
    return histogram_distance(histogram(a, n0), histogram(b, n0));
}

std::size_t default_n0(std::size_t n) {
    if (n < 3) throw SizeError("default_n0: needs n >= 3, got " + std::to_string(n));
    const double nd = static_cast<double>(n);
    const auto n0 = static_cast<std::size_t>(std::floor(std::sqrt(nd / std::log10(nd))));
    return std::max<std::size_t>(n0, 1);
}

LogMoments log_moments(const Graph& g, std::size_t count) {
    if (count == 0) throw SizeError("log_moments: moment count must be positive");
    // Work with the integer adjacency so that structurally zero traces stay
    // exactly zero; divide by n^i in log space afterwards.
    const Matrix adj = g.adjacency_matrix();
    const std::size_t half = (count + 1) / 2;
    std::vector<Matrix> powers;
    powers.reserve(half + 1);
    powers.push_back(Matrix::identity(g.size()));
    powers.push_back(adj);
    while (powers.size() <= half) powers.push_back(multiply(powers.back(), adj));

    const double log_n = std::log(static_cast<double>(g.size()));
    LogMoments out(count);
    for (std::size_t i = 1; i <= count; ++i) {
        const std::size_t k = i / 2;
        // trace(A^{2k}) = ||A^k||_F^2, trace(A^{2k+1}) = <A^k, A^{k+1}>.
        const double tr = (i % 2 == 0)
                              ? kernels::dot(powers[k].values(), powers[k].values())
                              : kernels::dot(powers[k].values(), powers[k + 1].values());
        if (tr > 0.0) out[i - 1] = std::log(tr) - static_cast<double>(i) * log_n;
    }
    return out;
}

} // namespace gdist
