#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include "gdist/error.hpp"
#include "gdist/graphon.hpp"
#include "gdist/transform.hpp"
#include "oracles.hpp"

using namespace gdist;

namespace {

Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph random_graph(std::mt19937_64& gen, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(gen)) g.add_edge(i, j);
    return g;
}

// Threshold graph: nodes are added one at a time as isolated or dominating.
// Nodes of equal degree have the same neighbourhood apart from each other,
// so the degree-sorted adjacency does not depend on how ties are broken.
Graph threshold_graph(std::mt19937_64& gen, std::size_t n) {
    Graph g(n);
    for (std::size_t v = 1; v < n; ++v)
        if (gen() & 1u)
            for (std::size_t u = 0; u < v; ++u) g.add_edge(u, v);
    return g;
}

std::vector<std::size_t> random_permutation(std::mt19937_64& gen, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), gen);
    return p;
}

} // namespace

TEST_SUITE("transform") {

TEST_CASE("degree sort examples") {
    const std::pair<std::size_t, std::size_t> path[] = {{0, 1}, {1, 2}};
    CHECK(degree_sort(Graph::from_edges(3, path)).order == std::vector<std::size_t>{0, 2, 1});
    CHECK(degree_sort(Graph(4)).order == std::vector<std::size_t>{0, 1, 2, 3});
    const std::pair<std::size_t, std::size_t> star[] = {{3, 0}, {3, 1}, {3, 2}};
    CHECK(degree_sort(Graph::from_edges(4, star)).order == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("degree sort is a non-decreasing permutation") {
    std::mt19937_64 gen(2);
    for (int t = 0; t < 50; ++t) {
        const Graph g = random_graph(gen, 30, 0.3);
        auto order = degree_sort(g).order;
        for (std::size_t k = 0; k + 1 < order.size(); ++k)
            CHECK(g.degree(order[k]) <= g.degree(order[k + 1]));
        std::sort(order.begin(), order.end());
        for (std::size_t k = 0; k < order.size(); ++k) CHECK(order[k] == k);
    }
}

TEST_CASE("histogram examples") {
    CHECK(histogram(complete(4), 2).values == Matrix{{0.5, 1.0}, {1.0, 0.5}});
    CHECK(histogram(Graph(10), 3).values == Matrix(3, 3, 0.0));
    CHECK_THROWS_AS(histogram(Graph(3), 4), SizeError);
    CHECK_THROWS_AS(histogram(Graph(3), 0), SizeError);

    std::mt19937_64 gen(4);
    const Graph g = random_graph(gen, 12, 0.4);
    const auto order = degree_sort(g).order;
    const Histogram h = histogram(g, 12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j)
            CHECK(h.values(i, j) == (g.has_edge(order[i], order[j]) ? 1.0 : 0.0));
}

TEST_CASE("histogram block sums match a direct count") {
    std::mt19937_64 gen(6);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 20 + gen() % 40, n0 = 1 + gen() % 9;
        const Graph g = random_graph(gen, n, 0.35);
        const auto order = degree_sort(g).order;
        const std::size_t h = n / n0;
        const Histogram hist = histogram(g, n0);
        CHECK(is_symmetric(hist.values));
        for (std::size_t a = 0; a < n0; ++a)
            for (std::size_t b = 0; b < n0; ++b) {
                double count = 0.0;
                for (std::size_t i = a * h; i < a * h + h; ++i)
                    for (std::size_t j = b * h; j < b * h + h; ++j)
                        count += g.has_edge(order[i], order[j]);
                CHECK(hist.values(a, b) == count / static_cast<double>(h * h));
                CHECK(hist.values(a, b) >= 0.0);
                CHECK(hist.values(a, b) <= 1.0);
            }
    }
}

TEST_CASE("leftover highest-degree nodes are dropped") {
    // Star on 7 nodes: h = 2 for n0 = 3, the centre is the single leftover.
    Graph star(7);
    for (std::size_t v = 1; v < 7; ++v) star.add_edge(0, v);
    CHECK(histogram(star, 3).values == Matrix(3, 3, 0.0));
}

TEST_CASE("histogram is invariant under relabeling when ties are twins") {
    std::mt19937_64 gen(12);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 10 + gen() % 50;
        const Graph g = threshold_graph(gen, n);
        const auto perm = random_permutation(gen, n);
        const Graph pg = g.relabeled(perm);
        for (std::size_t n0 : {std::size_t{1}, std::size_t{3}, std::size_t{7}, n})
            CHECK(histogram(pg, n0).values == histogram(g, n0).values);
    }
}

TEST_CASE("graph distance examples") {
    std::mt19937_64 gen(1);
    const Graph g = random_graph(gen, 40, 0.3);
    CHECK(graph_distance(g, g, 5) == 0.0);
    const double expected = 0.5 * std::sqrt(2 * 0.5625 + 2 * 1.0);
    CHECK(graph_distance(complete(8), Graph(8), 2) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.8839).epsilon(1e-4));
    CHECK_THROWS_AS(graph_distance(Graph(5), Graph(8), 6), SizeError);
}

TEST_CASE("graph distance is a pseudometric") {
    std::mt19937_64 gen(30);
    for (int t = 0; t < 100; ++t) {
        const Graph a = random_graph(gen, 30 + gen() % 30, 0.1 + 0.6 * (gen() % 100) / 100.0);
        const Graph b = random_graph(gen, 30 + gen() % 30, 0.1 + 0.6 * (gen() % 100) / 100.0);
        const Graph c = random_graph(gen, 30 + gen() % 30, 0.1 + 0.6 * (gen() % 100) / 100.0);
        const std::size_t n0 = 5;
        const double ab = graph_distance(a, b, n0), bc = graph_distance(b, c, n0),
                     ac = graph_distance(a, c, n0);
        CHECK(ab >= 0.0);
        CHECK(ab == graph_distance(b, a, n0));
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(graph_distance(a, a, n0) == 0.0);
    }
}

TEST_CASE("same-graphon distance at n=1600") {
    const auto w1 = Graphon::builtin(BuiltinGraphon::W1);
    std::vector<double> d;
    for (Seed s = 0; s < 20; ++s)
        d.push_back(graph_distance(sample_graph(w1, 1600, derive_seed(500, 2 * s)),
                                   sample_graph(w1, 1600, derive_seed(500, 2 * s + 1)),
                                   default_n0(1600)));
    std::sort(d.begin(), d.end());
    // 90th percentile of 20 values by nearest rank.
    CHECK(d[17] <= 0.08);
}

TEST_CASE("default n0") {
    CHECK(default_n0(50) == 5);
    CHECK(default_n0(100) == 7);
    CHECK(default_n0(200) == 9);
    CHECK(default_n0(500) == 13);
    CHECK(default_n0(1600) == 22);
    for (std::size_t n = 3; n < 5000; n += 37)
        CHECK(default_n0(n) ==
              std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(
                                           std::sqrt(n / std::log10(static_cast<double>(n)))))));
    CHECK_THROWS(default_n0(2));
}

TEST_CASE("log moments examples") {
    const auto k4 = log_moments(complete(4), 2);
    REQUIRE(k4.size() == 2);
    CHECK(!k4[0].has_value());
    REQUIRE(k4[1].has_value());
    CHECK(*k4[1] == doctest::Approx(std::log(12.0 / 16.0)).epsilon(1e-14));

    for (const auto& c : log_moments(Graph(5), 3)) CHECK(!c.has_value());

    const std::pair<std::size_t, std::size_t> cyc[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    const auto c4 = log_moments(Graph::from_edges(4, cyc), 3);
    CHECK(!c4[0].has_value());
    REQUIRE(c4[1].has_value());
    CHECK(*c4[1] == doctest::Approx(std::log(8.0 / 16.0)).epsilon(1e-14));
    CHECK(!c4[2].has_value());
}

TEST_CASE("log moments agree with naive matrix powers") {
    std::mt19937_64 gen(14);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 8 + gen() % 10;
        const Graph g = random_graph(gen, n, 0.5);
        std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = g.has_edge(i, j);
        const auto lm = log_moments(g, 6);
        for (std::size_t i = 1; i <= 6; ++i) {
            const double tr = oracle::naive_trace_power(a, i);
            if (tr <= 0.0) {
                CHECK(!lm[i - 1].has_value());
            } else {
                REQUIRE(lm[i - 1].has_value());
                const double expected = std::log(tr) - static_cast<double>(i) * std::log(double(n));
                CHECK(*lm[i - 1] == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

}
