#include "gdist/numerics.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "gdist/error.hpp"
#include "gdist/kernels.hpp"

namespace gdist {
namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    return kernels::sum_squared_diff(a, b);
}

Matrix plus_plus_seeds(const Matrix& x, std::size_t k, Rng& rng) {
    const std::size_t m = x.rows();
    Matrix centers(k, x.cols());
    std::vector<double> d2(m, std::numeric_limits<double>::infinity());
    std::size_t pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m) - 1));
    for (std::size_t c = 0; c < k; ++c) {
        std::copy(x.row(pick).begin(), x.row(pick).end(), centers.row(c).begin());
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            d2[i] = std::min(d2[i], sq_dist(x.row(i), centers.row(c)));
            total += d2[i];
        }
        if (c + 1 == k) break;
        if (total <= 0.0) {
            pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m) - 1));
            continue;
        }
        double target = rng.uniform() * total;
        pick = m - 1;
        for (std::size_t i = 0; i < m; ++i) {
            target -= d2[i];
            if (target < 0.0 && d2[i] > 0.0) {
                pick = i;
                break;
            }
        }
    }
    return centers;
}

// Nearest center for every row; returns the objective.
double assign(const Matrix& x, const Matrix& centers, std::vector<int>& labels,
              std::vector<double>& dist) {
    double obj = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t c = 0; c < centers.rows(); ++c) {
            const double d = sq_dist(x.row(i), centers.row(c));
            if (d < best) {
                best = d;
                arg = static_cast<int>(c);
            }
        }
        labels[i] = arg;
        dist[i] = best;
        obj += best;
    }
    return obj;
}

void update_centers(const Matrix& x, std::span<const int> labels, Matrix& centers,
                    std::vector<std::size_t>& counts) {
    std::fill(centers.values().begin(), centers.values().end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        kernels::axpy(1.0, x.row(i), centers.row(static_cast<std::size_t>(labels[i])));
        ++counts[static_cast<std::size_t>(labels[i])];
    }
    for (std::size_t c = 0; c < centers.rows(); ++c)
        if (counts[c] > 0)
            for (double& v : centers.row(c)) v /= static_cast<double>(counts[c]);
}

KMeansResult lloyd(const Matrix& x, std::size_t k, Rng rng, const KMeansOptions& opts) {
    const std::size_t m = x.rows();
    KMeansResult r;
    r.centers = plus_plus_seeds(x, k, rng);
    std::vector<int> labels(m, 0);
    std::vector<double> dist(m, 0.0);
    std::vector<std::size_t> counts(k, 0);

    double obj = assign(x, r.centers, labels, dist);
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        update_centers(x, labels, r.centers, counts);
        // An empty cluster takes over the point farthest from its center.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (counts[static_cast<std::size_t>(labels[i])] > 1 && dist[i] > far_d) {
                    far_d = dist[i];
                    far = i;
                }
            }
            if (far_d < 0.0) break;
            --counts[static_cast<std::size_t>(labels[far])];
            std::copy(x.row(far).begin(), x.row(far).end(), r.centers.row(c).begin());
            labels[far] = static_cast<int>(c);
            dist[far] = 0.0;
            counts[c] = 1;
        }
        const double next = assign(x, r.centers, labels, dist);
        assert(next <= obj + 1e-9 * std::max(1.0, obj));
        const bool converged = obj - next <= opts.relative_tolerance * std::max(obj, 1e-300);
        obj = next;
        if (converged) break;
    }
    update_centers(x, labels, r.centers, counts);
    r.objective = kmeans_objective(x, labels, k);
    r.assignment = {std::move(labels), k};
    return r;
}

} // namespace

double kmeans_objective(const Matrix& points, std::span<const int> labels, std::size_t k) {
    Matrix centers(k, points.cols());
    std::vector<std::size_t> counts(k, 0);
    update_centers(points, labels, centers, counts);
    double obj = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i)
        obj += sq_dist(points.row(i), centers.row(static_cast<std::size_t>(labels[i])));
    return obj;
}

KMeansResult kmeans_fit(const Matrix& points, std::size_t k, Seed seed, KMeansOptions opts) {
    if (k == 0) throw SizeError("kmeans: k must be positive");
    if (k > points.rows())
        throw SizeError("kmeans: k=" + std::to_string(k) + " exceeds number of points m=" +
                        std::to_string(points.rows()));
    const std::size_t restarts = std::max<std::size_t>(opts.restarts, 1);
    KMeansResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        KMeansResult run = lloyd(points, k, Rng(derive_seed(seed, r)), opts);
        if (run.objective < best.objective) best = std::move(run);
    }
    return best;
}

ClusterAssignment kmeans(const Matrix& points, std::size_t k, Seed seed, KMeansOptions opts) {
    return kmeans_fit(points, k, seed, opts).assignment;
}

} // namespace gdist
