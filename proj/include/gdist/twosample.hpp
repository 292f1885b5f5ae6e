#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gdist/graph.hpp"
#include "gdist/graphon.hpp"
#include "gdist/matrix.hpp"
#include "gdist/rng.hpp"

namespace gdist {

// Which graph(s) the bootstrap null model is fitted to.
enum class BootstrapSource {
    First,  // grid graphon from G1's histogram at default_n0(n1)
    Pooled, // average of both histograms at default_n0(min(n1, n2))
};

struct TestOutcome {
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;
    double alpha = 0.05;
    std::size_t n0 = 0;
    std::size_t bootstrap_samples = 0;
    Seed seed = 0;
    // Bootstrap (1 - alpha) quantile: the empirical rejection threshold.
    double xi_hat = 0.0;
    std::vector<double> null_distribution; // sorted ascending
};

// Null distribution of d(G', G'') for independent G' (n1 nodes) and G''
// (n2 nodes) drawn from the grid graphon fitted to `fit`. Replicate b uses the
// stream (seed, b). Returned sorted ascending.
std::vector<double> bootstrap_null(const Graphon& fit, std::size_t n1, std::size_t n2,
                                   std::size_t n0, std::size_t replicates, Seed seed);
std::vector<double> bootstrap_null(const Graph& g1, std::size_t n2, std::size_t n0,
                                   std::size_t replicates, Seed seed);

// Grid graphon fitted to the chosen source graph(s): block averages, with the
// diagonal blocks corrected for the missing self-loops.
Graphon fit_null_model(const Graph& g1, const Graph& g2, BootstrapSource source);

// p-value with the add-one rule: (1 + #{null >= statistic}) / (B + 1).
double bootstrap_p_value(std::span<const double> null_distribution, double statistic);

TestOutcome two_sample_test(const Graph& g1, const Graph& g2, std::size_t n0,
                            std::size_t replicates, double alpha, Seed seed,
                            BootstrapSource source = BootstrapSource::First);

struct PowerSettings {
    std::size_t n = 100;         // G1 size; G2 has 2n nodes
    std::size_t n0 = 10;
    std::size_t trials = 200;
    std::size_t bootstrap = 100;
    double alpha = 0.05;
    BootstrapSource source = BootstrapSource::First;
};

// Entry (a, b): rejection rate over fresh pairs G1 ~ graphons[a],
// G2 ~ graphons[b].
Matrix power_matrix(std::span<const Graphon> graphons, const PowerSettings& settings, Seed seed);

} // namespace gdist
