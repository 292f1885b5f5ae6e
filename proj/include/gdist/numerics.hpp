#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gdist/matrix.hpp"
#include "gdist/rng.hpp"

namespace gdist {

// Full symmetric eigendecomposition. values[k] pairs with column k of
// `vectors`. Ordered by |value| descending; equal magnitudes put the larger
// signed value first, then the lower original index. Each eigenvector is
// sign-normalized so its largest-magnitude component is positive.
struct EigenPairs {
    std::vector<double> values;
    Matrix vectors;

    std::vector<double> vector(std::size_t k) const;
};

// Cyclic Jacobi rotations on (M + M^T)/2. Throws InputError on non-square or
// non-finite input.
EigenPairs sym_eigen(const Matrix& m);

// Row k of `vectors` restricted to the given columns, as an m x cols.size() matrix.
Matrix eigen_rows(const EigenPairs& e, std::span<const std::size_t> columns);

struct ClusterAssignment {
    std::vector<int> labels;
    std::size_t k = 0;
};

struct KMeansOptions {
    std::size_t restarts = 10;
    std::size_t max_iterations = 300;
    double relative_tolerance = 1e-9;
};

struct KMeansResult {
    ClusterAssignment assignment;
    double objective = 0.0; // within-cluster sum of squares
    Matrix centers;
};

// Lloyd's algorithm from k-means++ seeding on the rows of `points`; best of
// `restarts` runs. Restart r draws from the stream (seed, r).
// Throws SizeError when k == 0 or k > rows.
KMeansResult kmeans_fit(const Matrix& points, std::size_t k, Seed seed, KMeansOptions opts = {});
ClusterAssignment kmeans(const Matrix& points, std::size_t k, Seed seed, KMeansOptions opts = {});

// Within-cluster sum of squares of a given labeling (centroids recomputed).
double kmeans_objective(const Matrix& points, std::span<const int> labels, std::size_t k);

// Column assigned to each row maximizing the total weight of a square
// matrix (Hungarian method with potentials, O(n^3)).
std::vector<std::size_t> max_weight_assignment(const Matrix& weights);

// Fraction of items misclustered under the best one-to-one matching of
// predicted to true labels. Labels must be non-negative.
double hungarian_error(std::span<const int> truth, std::span<const int> predicted);

// Adjusted Rand Index. Two trivial partitions that coincide (both all
// singletons or both one block) score 1.
double ari(std::span<const int> a, std::span<const int> b);

} // namespace gdist
