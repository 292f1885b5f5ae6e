#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gdist/clustering.hpp"
#include "gdist/error.hpp"
#include "oracles.hpp"

using namespace gdist;

namespace {

double inner(const Matrix& a, const Matrix& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) s += a.values()[k] * b.values()[k];
    return s;
}

Matrix random_symmetric(std::mt19937_64& gen, std::size_t m, double lo, double hi) {
    std::uniform_real_distribution<double> unif(lo, hi);
    Matrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) a(i, j) = a(j, i) = unif(gen);
    return a;
}

// Normalized clustering matrix: 1/|C| on pairs inside a cluster, 0 elsewhere.
Matrix clustering_matrix(const std::vector<int>& labels, int k) {
    const std::size_t m = labels.size();
    std::vector<double> size(static_cast<std::size_t>(k), 0.0);
    for (int l : labels) size[static_cast<std::size_t>(l)] += 1.0;
    Matrix x(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (labels[i] == labels[j]) x(i, j) = 1.0 / size[static_cast<std::size_t>(labels[i])];
    return x;
}

Matrix random_similarity(std::mt19937_64& gen, std::size_t m) {
    Matrix s = random_symmetric(gen, m, 0.01, 1.0);
    for (std::size_t i = 0; i < m; ++i) s(i, i) = 1.0;
    return s;
}

} // namespace

TEST_SUITE("sdp") {

TEST_CASE("affine projection is orthogonal") {
    std::mt19937_64 gen(1);
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = 3 + gen() % 10;
        const std::size_t k = 1 + gen() % (m - 1);
        const Matrix y = random_symmetric(gen, m, -2.0, 2.0);
        const Matrix x = project_affine(y, k);
        const auto f = sdp_feasibility(x, k);
        CHECK(f.max_row_sum_error <= 1e-12);
        CHECK(f.trace_error <= 1e-12);
        // Any other point of the affine set: a clustering matrix with k
        // clusters (trace k, unit row sums).
        std::vector<int> labels(m);
        for (std::size_t i = 0; i < m; ++i) labels[i] = static_cast<int>(i % k);
        const Matrix other = clustering_matrix(labels, static_cast<int>(k));
        Matrix r(m, m), dir(m, m);
        for (std::size_t i = 0; i < m * m; ++i) {
            r.values()[i] = y.values()[i] - x.values()[i];
            dir.values()[i] = other.values()[i] - x.values()[i];
        }
        CHECK(std::abs(inner(r, dir)) <= 1e-10 * (1.0 + frobenius_norm(r) * frobenius_norm(dir)));
    }
}

TEST_CASE("polytope projection satisfies the variational inequality") {
    std::mt19937_64 gen(2);
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = 4 + gen() % 5;
        const int k = 2;
        const Matrix y = random_symmetric(gen, m, -0.5, 1.0);
        const Matrix x = project_polytope(y, k, 5000, 1e-12);
        const auto f = sdp_feasibility(x, k);
        CHECK(f.min_entry >= -1e-9);
        CHECK(f.max_row_sum_error <= 1e-8);
        CHECK(f.trace_error <= 1e-8);
        Matrix r(m, m);
        for (std::size_t i = 0; i < m * m; ++i) r.values()[i] = y.values()[i] - x.values()[i];
        for (const auto& lab : oracle::two_partitions(m)) {
            const Matrix c = clustering_matrix(lab, k);
            Matrix dir(m, m);
            for (std::size_t i = 0; i < m * m; ++i) dir.values()[i] = c.values()[i] - x.values()[i];
            CHECK(inner(r, dir) <= 1e-6);
        }
    }
}

TEST_CASE("ideal block similarity recovers the clustering matrix") {
    Matrix s(6, 6, std::exp(-5.0));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if ((i < 3) == (j < 3)) s(i, j) = 1.0;
    const auto sol = solve_sdp(s, 2);
    const Matrix ideal = clustering_matrix({0, 0, 0, 1, 1, 1}, 2);
    CHECK(frobenius_distance(sol.x, ideal) <= 1e-3);
    CHECK(sdp_feasibility(sol.x, 2).within(1e-6));

    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> best_labels;
    for (const auto& lab : oracle::two_partitions(6)) {
        const double v = oracle::clustering_objective(s, lab, 2);
        if (v > best) {
            best = v;
            best_labels = lab;
        }
    }
    CHECK(best_labels == std::vector<int>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("all-ones similarity has constant objective m") {
    for (std::size_t k : {2u, 3u}) {
        const auto sol = solve_sdp(Matrix(7, 7, 1.0), k);
        CHECK(sol.objective == doctest::Approx(7.0).epsilon(1e-5));
        CHECK(sdp_feasibility(sol.x, k).within(1e-6));
    }
}

TEST_CASE("two items and two clusters give the identity") {
    const auto sol = solve_sdp(Matrix{{1.0, 0.3}, {0.3, 1.0}}, 2);
    CHECK(frobenius_distance(sol.x, Matrix::identity(2)) <= 1e-6);
}

TEST_CASE("argument checks and convergence failure") {
    CHECK_THROWS_AS(solve_sdp(Matrix(4, 4, 1.0), 5), SizeError);
    CHECK_THROWS_AS(solve_sdp(Matrix(4, 4, 1.0), 0), SizeError);
    std::mt19937_64 gen(5);
    SdpParams params;
    params.max_iterations = 1;
    params.tol = 1e-12;
    try {
        solve_sdp(random_similarity(gen, 10), 3, params);
        FAIL("expected a convergence error");
    } catch (const SdpConvergenceError& e) {
        CHECK(e.kind() == "convergence");
        CHECK(e.diagnostics().iterations == 1);
        CHECK(e.diagnostics().x.rows() == 10);
    }
}

TEST_CASE("solution is feasible and at least as good as every 2-partition") {
    std::mt19937_64 gen(7);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = 3 + gen() % 6;
        const Matrix s = random_similarity(gen, m);
        const auto sol = solve_sdp(s, 2);
        CHECK(sdp_feasibility(sol.x, 2).within(1e-6));
        CHECK(is_symmetric(sol.x));
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& lab : oracle::two_partitions(m))
            best = std::max(best, oracle::clustering_objective(s, lab, 2));
        CHECK(sol.objective >= best - 1e-6);
        CHECK(sol.objective == doctest::Approx(inner(s, sol.x)).epsilon(1e-12));
    }
}

}
