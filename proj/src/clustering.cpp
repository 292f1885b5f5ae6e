#include "gdist/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "gdist/kernels.hpp"
#include "gdist/parallel.hpp"
#include "gdist/transform.hpp"

namespace gdist {
namespace {

void check_k(std::size_t k, std::size_t m) {
    if (k < 2 || k > m)
        throw SizeError("cluster count K=" + std::to_string(k) + " must satisfy 2 <= K <= m=" +
                        std::to_string(m));
}

DistanceMatrix pairwise(std::size_t m, const std::function<double(std::size_t, std::size_t)>& dist) {
    DistanceMatrix d{Matrix(m, m)};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    parallel_for(pairs.size(), [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        const double v = dist(i, j);
        d.values(i, j) = v;
        d.values(j, i) = v;
    });
    return d;
}

// Columns of the k eigenpairs ranked first by the given comparator.
Matrix top_eigen_rows(const EigenPairs& e, std::size_t k, bool by_signed_value) {
    std::vector<std::size_t> idx(e.values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (by_signed_value)
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return e.values[a] > e.values[b]; });
    idx.resize(k);
    return eigen_rows(e, idx);
}

} // namespace

DistanceMatrix distance_matrix(std::span<const Histogram> histograms) {
    const std::size_t m = histograms.size();
    if (m < 2) throw SizeError("distance_matrix: needs at least two graphs");
    return pairwise(m, [&](std::size_t i, std::size_t j) {
        return histogram_distance(histograms[i], histograms[j]);
    });
}

DistanceMatrix distance_matrix(std::span<const Graph> graphs, std::size_t n0) {
    const std::size_t m = graphs.size();
    if (m < 2) throw SizeError("distance_matrix: needs at least two graphs");
    std::vector<Histogram> hist(m);
    parallel_for(m, [&](std::size_t i) { hist[i] = histogram(graphs[i], n0); });
    return distance_matrix(hist);
}

ClusterAssignment spectral_cluster_distances(const DistanceMatrix& d, std::size_t k, Seed seed,
                                             const DscOptions& opts) {
    check_k(k, d.size());
    const EigenPairs e = sym_eigen(d.values);
    Matrix rows = top_eigen_rows(e, k, false);
    if (opts.normalize_rows) {
        for (std::size_t i = 0; i < rows.rows(); ++i) {
            const double norm = std::sqrt(kernels::dot(rows.row(i), rows.row(i)));
            if (norm > 0.0)
                for (double& v : rows.row(i)) v /= norm;
        }
    }
    return kmeans(rows, k, seed, opts.kmeans);
}

ClusterAssignment dsc(std::span<const Graph> graphs, std::size_t k, std::size_t n0, Seed seed,
                      const DscOptions& opts) {
    check_k(k, graphs.size());
    return spectral_cluster_distances(distance_matrix(graphs, n0), k, seed, opts);
}

namespace {

SimilarityMatrix kernelize(const DistanceMatrix& d, std::vector<double> sigma,
                           SimilarityKernel kernel) {
    const std::size_t m = d.size();
    SimilarityMatrix s{Matrix(m, m), std::move(sigma)};
    for (std::size_t i = 0; i < m; ++i) {
        s.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dij = d.values(i, j);
            const double num = kernel == SimilarityKernel::Gaussian ? dij * dij : dij;
            const double v = std::exp(-num / (s.sigma[i] * s.sigma[j]));
            s.values(i, j) = v;
            s.values(j, i) = v;
        }
    }
    return s;
}

} // namespace

SimilarityMatrix similarity_matrix(const DistanceMatrix& d, std::size_t neighbor_rank,
                                   SimilarityKernel kernel) {
    const std::size_t m = d.size();
    if (neighbor_rank < 1 || neighbor_rank >= m)
        throw SizeError("similarity_matrix: neighbor rank " + std::to_string(neighbor_rank) +
                        " must satisfy 1 <= rank < m=" + std::to_string(m));
    std::vector<double> sigma(m);
    std::vector<double> row;
    for (std::size_t i = 0; i < m; ++i) {
        row.clear();
        double smallest_positive = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double v = d.values(i, j);
            row.push_back(v);
            if (v > 0.0 && (smallest_positive == 0.0 || v < smallest_positive)) smallest_positive = v;
        }
        if (smallest_positive == 0.0)
            throw InputError("degenerate population: graph " + std::to_string(i) +
                             " is at distance 0 from every other graph");
        std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(neighbor_rank - 1),
                         row.end());
        const double kth = row[neighbor_rank - 1];
        sigma[i] = kth > 0.0 ? kth : smallest_positive;
    }
    return kernelize(d, std::move(sigma), kernel);
}

SimilarityMatrix similarity_matrix_uniform(const DistanceMatrix& d, double sigma,
                                           SimilarityKernel kernel) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("similarity_matrix_uniform: sigma must be positive and finite");
    return kernelize(d, std::vector<double>(d.size(), sigma), kernel);
}

SsdpResult ssdp_from_similarity(SimilarityMatrix s, std::size_t k, Seed seed,
                                const SsdpOptions& opts) {
    check_k(k, s.size());
    SsdpResult out;
    out.similarity = std::move(s);
    out.sdp = solve_sdp(out.similarity, k, opts.sdp);
    const EigenPairs e = sym_eigen(out.sdp.x);
    out.assignment = kmeans(top_eigen_rows(e, k, true), k, seed, opts.kmeans);
    return out;
}

SsdpResult ssdp_from_distances(const DistanceMatrix& d, std::size_t k, Seed seed,
                               const SsdpOptions& opts) {
    const std::size_t m = d.size();
    check_k(k, m);
    if (opts.uniform_sigma)
        return ssdp_from_similarity(similarity_matrix_uniform(d, *opts.uniform_sigma, opts.kernel),
                                    k, seed, opts);
    std::size_t rank = opts.neighbor_rank;
    if (rank == 0) rank = m <= 5 ? m - 1 : 5;
    return ssdp_from_similarity(similarity_matrix(d, rank, opts.kernel), k, seed, opts);
}

ClusterAssignment ssdp(std::span<const Graph> graphs, std::size_t k, std::size_t n0, Seed seed,
                       const SsdpOptions& opts) {
    check_k(k, graphs.size());
    return ssdp_from_distances(distance_matrix(graphs, n0), k, seed, opts).assignment;
}

DistanceMatrix log_moment_distances(std::span<const Graph> graphs, std::size_t moments) {
    const std::size_t m = graphs.size();
    if (m < 2) throw SizeError("log_moment_distances: needs at least two graphs");
    std::vector<LogMoments> emb(m);
    parallel_for(m, [&](std::size_t i) { emb[i] = log_moments(graphs[i], moments); });
    return pairwise(m, [&](std::size_t i, std::size_t j) {
        double acc = 0.0;
        for (std::size_t c = 0; c < moments; ++c)
            if (emb[i][c] && emb[j][c]) {
                const double diff = *emb[i][c] - *emb[j][c];
                acc += diff * diff;
            }
        return std::sqrt(acc);
    });
}

ClusterAssignment nclm(std::span<const Graph> graphs, std::size_t k, Seed seed,
                       std::size_t moments, const DscOptions& opts) {
    check_k(k, graphs.size());
    return spectral_cluster_distances(log_moment_distances(graphs, moments), k, seed, opts);
}

} // namespace gdist
