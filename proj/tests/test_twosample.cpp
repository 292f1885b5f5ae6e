#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gdist/error.hpp"
#include "gdist/graphon.hpp"
#include "gdist/transform.hpp"
#include "gdist/twosample.hpp"

using namespace gdist;

namespace {

Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

double rejection_rate(const Graphon& a, const Graphon& b, std::size_t n, std::size_t trials,
                      Seed seed) {
    PowerSettings ps;
    ps.n = n;
    ps.n0 = 10;
    ps.trials = trials;
    ps.bootstrap = 60;
    const std::vector<Graphon> ws{a, b};
    return power_matrix(ws, ps, seed)(0, 1);
}

} // namespace

TEST_SUITE("twosample") {

TEST_CASE("bootstrap null of trivial graphs") {
    for (double v : bootstrap_null(Graph(40), 80, 5, 30, 1)) CHECK(v == 0.0);
    // Complete graphs of different sizes differ on the diagonal blocks, so
    // the second graph has the same size here.
    for (double v : bootstrap_null(complete(40), 40, 5, 30, 1)) CHECK(v == 0.0);
}

TEST_CASE("bootstrap null sanity band for W1") {
    const Graph g1 = sample_graph(Graphon::builtin(BuiltinGraphon::W1), 100, 3);
    const auto null = bootstrap_null(g1, 200, 10, 100, 4);
    REQUIRE(null.size() == 100);
    CHECK(std::is_sorted(null.begin(), null.end()));
    const double p95 = null[94];
    CHECK(p95 >= 0.02);
    CHECK(p95 <= 0.5);
    CHECK(null == bootstrap_null(g1, 200, 10, 100, 4));
}

TEST_CASE("identical graphs") {
    const Graph g = sample_graph(Graphon::builtin(BuiltinGraphon::W2), 100, 8);
    const auto t = two_sample_test(g, g, 10, 50, 0.05, 2);
    CHECK(t.statistic == 0.0);
    CHECK(t.p_value == 1.0);
    CHECK(!t.reject);
    CHECK(t.null_distribution.size() == 50);
    CHECK(t.bootstrap_samples == 50);
}

TEST_CASE("argument checks") {
    const Graph g = sample_graph(Graphon::builtin(BuiltinGraphon::W2), 60, 8);
    CHECK_THROWS_AS(two_sample_test(g, g, 5, 10, 0.05, 1), SizeError);
    CHECK_THROWS_AS(two_sample_test(g, g, 5, 50, 0.0, 1), DomainError);
    CHECK_THROWS_AS(two_sample_test(g, g, 5, 50, 1.0, 1), DomainError);
    CHECK_THROWS_AS(two_sample_test(g, g, 61, 50, 0.05, 1), SizeError);
}

TEST_CASE("p-value bounds and monotonicity") {
    const std::vector<double> null{0.1, 0.2, 0.2, 0.3, 0.5};
    CHECK(bootstrap_p_value(null, 0.0) == 1.0);
    CHECK(bootstrap_p_value(null, 0.2) == doctest::Approx(5.0 / 6.0));
    CHECK(bootstrap_p_value(null, 0.25) == doctest::Approx(3.0 / 6.0));
    CHECK(bootstrap_p_value(null, 9.0) == doctest::Approx(1.0 / 6.0));
    double prev = 2.0;
    for (double s = 0.0; s < 0.7; s += 0.01) {
        const double p = bootstrap_p_value(null, s);
        CHECK(p <= prev);
        CHECK(p >= 1.0 / 6.0);
        CHECK(p <= 1.0);
        prev = p;
    }
}

TEST_CASE("decision agrees with the p-value") {
    const Graph a = sample_graph(Graphon::builtin(BuiltinGraphon::W1), 100, 1);
    const Graph b = sample_graph(Graphon::builtin(BuiltinGraphon::W4), 200, 2);
    for (auto src : {BootstrapSource::First, BootstrapSource::Pooled}) {
        const auto t = two_sample_test(a, b, 10, 100, 0.05, 3, src);
        CHECK(t.reject == (t.p_value < t.alpha));
        CHECK(t.reject);
        CHECK(t.statistic == graph_distance(a, b, 10));
        CHECK(t.xi_hat == t.null_distribution[94]);
    }
}

TEST_CASE("type-I control with an oracle null") {
    // Null distribution from fresh samples of the true graphon, then
    // rejection frequency over independent same-graphon pairs.
    const auto w = Graphon::builtin(BuiltinGraphon::W3);
    const std::size_t n1 = 100, n2 = 200, n0 = 10;
    const auto null = bootstrap_null(w, n1, n2, n0, 1000, 11);
    std::size_t rejections = 0;
    const std::size_t trials = 500;
    for (std::size_t t = 0; t < trials; ++t) {
        const double d = graph_distance(sample_graph(w, n1, derive_seed(12, 2 * t)),
                                        sample_graph(w, n2, derive_seed(12, 2 * t + 1)), n0);
        rejections += bootstrap_p_value(null, d) < 0.05;
    }
    const double rate = static_cast<double>(rejections) / trials;
    CAPTURE(rate);
    CHECK(rate >= 0.02);
    CHECK(rate <= 0.10);
}

TEST_CASE("power for W1 against W4 grows with n") {
    const auto w1 = Graphon::builtin(BuiltinGraphon::W1);
    const auto w4 = Graphon::builtin(BuiltinGraphon::W4);
    const double p50 = rejection_rate(w1, w4, 50, 100, 31);
    const double p100 = rejection_rate(w1, w4, 100, 100, 32);
    const double p150 = rejection_rate(w1, w4, 150, 100, 33);
    CAPTURE(p50);
    CAPTURE(p100);
    CAPTURE(p150);
    CHECK(p50 <= p100);
    CHECK(p100 <= p150);
}

TEST_CASE("power matrix shape and determinism") {
    PowerSettings ps;
    ps.n = 60;
    ps.n0 = 5;
    ps.trials = 20;
    ps.bootstrap = 20;
    const std::vector<Graphon> ws{Graphon::builtin(BuiltinGraphon::W1),
                                  Graphon::builtin(BuiltinGraphon::W4)};
    const Matrix p = power_matrix(ws, ps, 5);
    CHECK(p.rows() == 2);
    CHECK(p.cols() == 2);
    for (double v : p.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(p == power_matrix(ws, ps, 5));
    ps.trials = 10;
    CHECK_THROWS_AS(power_matrix(ws, ps, 5), SizeError);
}

}
