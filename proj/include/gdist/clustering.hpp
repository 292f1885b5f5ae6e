#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gdist/error.hpp"
#include "gdist/graph.hpp"
#include "gdist/matrix.hpp"
#include "gdist/numerics.hpp"
#include "gdist/rng.hpp"

namespace gdist {

// Pairwise graph distances: symmetric, non-negative, zero diagonal.
struct DistanceMatrix {
    Matrix values;
    std::size_t size() const noexcept { return values.rows(); }
};

// exp(-D_ij / (sigma_i sigma_j)): symmetric, entries in (0,1], unit diagonal.
struct SimilarityMatrix {
    Matrix values;
    std::vector<double> sigma;
    std::size_t size() const noexcept { return values.rows(); }
};

// Each histogram is computed once; pairs are spread over the worker pool.
DistanceMatrix distance_matrix(std::span<const Graph> graphs, std::size_t n0);
DistanceMatrix distance_matrix(std::span<const Histogram> histograms);

struct DscOptions {
    // Scale each row of the eigenvector matrix to unit length before k-means.
    bool normalize_rows = true;
    KMeansOptions kmeans;
};

// Spectral clustering of a distance matrix: rows of the K eigenvectors with
// largest |eigenvalue|, then k-means.
ClusterAssignment spectral_cluster_distances(const DistanceMatrix& d, std::size_t k, Seed seed,
                                             const DscOptions& opts = {});

ClusterAssignment dsc(std::span<const Graph> graphs, std::size_t k, std::size_t n0, Seed seed,
                      const DscOptions& opts = {});

enum class SimilarityKernel {
    Gaussian, // exp(-D_ij^2 / (sigma_i sigma_j)); invariant to rescaling D
    Linear,   // exp(-D_ij / (sigma_i sigma_j))
};

// Local scaling: sigma_i is the distance from i to its neighbor_rank-th
// nearest neighbour (duplicates count as neighbours at distance 0). A zero
// sigma falls back to the smallest positive distance in the row; a row with
// no positive distance raises InputError ("degenerate population").
SimilarityMatrix similarity_matrix(const DistanceMatrix& d, std::size_t neighbor_rank = 5,
                                   SimilarityKernel kernel = SimilarityKernel::Gaussian);

// Fixed bandwidth: sigma_i = sigma for all i.
SimilarityMatrix similarity_matrix_uniform(const DistanceMatrix& d, double sigma,
                                           SimilarityKernel kernel = SimilarityKernel::Gaussian);

struct SdpParams {
    double tol = 1e-6;
    std::size_t max_iterations = 20000;
    double rho = 1.0;
    // Residual balancing: rho doubles or halves every `balance_interval`
    // iterations when one residual exceeds the other tenfold.
    std::size_t balance_interval = 50;
    std::size_t dykstra_iterations = 100;
};

struct SdpSolution {
    Matrix x;
    std::size_t iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double objective = 0.0;
    double rho = 0.0;
};

class SdpConvergenceError : public Error {
public:
    SdpConvergenceError(const std::string& what, SdpSolution diagnostics)
        : Error("convergence", what), diagnostics_(std::move(diagnostics)) {}
    const SdpSolution& diagnostics() const noexcept { return diagnostics_; }

private:
    SdpSolution diagnostics_;
};

// max trace(S X) s.t. X >= 0 entrywise, X PSD, X 1 = 1, trace(X) = K.
// ADMM splitting between the PSD cone and the polytope. Throws
// SdpConvergenceError if the iteration cap is hit with residual > 10 * tol.
SdpSolution solve_sdp(const SimilarityMatrix& s, std::size_t k, const SdpParams& params = {});
SdpSolution solve_sdp(const Matrix& s, std::size_t k, const SdpParams& params = {});

// Euclidean projection of a symmetric matrix onto {X 1 = 1, trace X = K}.
Matrix project_affine(const Matrix& y, std::size_t k);
// Dykstra alternation between the affine set and the nonnegative orthant.
Matrix project_polytope(const Matrix& y, std::size_t k, std::size_t iterations, double tol);

struct Feasibility {
    double min_entry = 0.0;
    double min_eigenvalue = 0.0;
    double max_row_sum_error = 0.0;
    double trace_error = 0.0;
    bool within(double tol) const {
        return min_entry >= -tol && min_eigenvalue >= -tol && max_row_sum_error <= tol &&
               trace_error <= tol;
    }
};
Feasibility sdp_feasibility(const Matrix& x, std::size_t k);

struct SsdpOptions {
    // 0 selects the default: 5, lowered to m - 1 for populations of m <= 5.
    std::size_t neighbor_rank = 0;
    std::optional<double> uniform_sigma;
    SimilarityKernel kernel = SimilarityKernel::Gaussian;
    SdpParams sdp;
    KMeansOptions kmeans;
};

struct SsdpResult {
    ClusterAssignment assignment;
    SdpSolution sdp;
    SimilarityMatrix similarity;
};

// SDP on a given similarity matrix, then k-means on the rows of the top-K
// eigenvectors of the solution. Options that build the similarity are ignored.
SsdpResult ssdp_from_similarity(SimilarityMatrix s, std::size_t k, Seed seed,
                                const SsdpOptions& opts = {});
SsdpResult ssdp_from_distances(const DistanceMatrix& d, std::size_t k, Seed seed,
                               const SsdpOptions& opts = {});
ClusterAssignment ssdp(std::span<const Graph> graphs, std::size_t k, std::size_t n0, Seed seed,
                       const SsdpOptions& opts = {});

// Log-moment baseline: each graph becomes its first `moments` log moments;
// pairwise Euclidean distance over components defined for both graphs.
DistanceMatrix log_moment_distances(std::span<const Graph> graphs, std::size_t moments = 8);
ClusterAssignment nclm(std::span<const Graph> graphs, std::size_t k, Seed seed,
                       std::size_t moments = 8, const DscOptions& opts = {});

} // namespace gdist
