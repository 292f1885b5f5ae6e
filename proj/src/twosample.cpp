#include "gdist/twosample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdist/error.hpp"
#include "gdist/parallel.hpp"
#include "gdist/transform.hpp"

namespace gdist {
namespace {

constexpr std::size_t kMinReplicates = 20;

void check_replicates(std::size_t b) {
    if (b < kMinReplicates)
        throw SizeError("bootstrap needs at least " + std::to_string(kMinReplicates) +
                        " replicates, got " + std::to_string(b));
}

double replicate_statistic(const Graphon& fit, std::size_t n1, std::size_t n2, std::size_t n0,
                           Seed seed, std::size_t b) {
    const Seed s = derive_seed(seed, b);
    return graph_distance(sample_graph(fit, n1, derive_seed(s, 0)),
                          sample_graph(fit, n2, derive_seed(s, 1)), n0);
}

std::vector<double> null_statistics(const Graphon& fit, std::size_t n1, std::size_t n2,
                                    std::size_t n0, std::size_t replicates, Seed seed,
                                    bool parallel) {
    check_replicates(replicates);
    if (n0 == 0 || n0 > std::min(n1, n2))
        throw SizeError("bootstrap_null: n0=" + std::to_string(n0) + " must be in [1, min(n1, n2)=" +
                        std::to_string(std::min(n1, n2)) + "]");
    std::vector<double> stats(replicates);
    auto body = [&](std::size_t b) { stats[b] = replicate_statistic(fit, n1, n2, n0, seed, b); };
    if (parallel) {
        parallel_for(replicates, body);
    } else {
        for (std::size_t b = 0; b < replicates; ++b) body(b);
    }
    std::sort(stats.begin(), stats.end());
    return stats;
}

TestOutcome run_test(const Graph& g1, const Graph& g2, std::size_t n0, std::size_t replicates,
                     double alpha, Seed seed, BootstrapSource source, bool parallel) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    check_replicates(replicates);

    TestOutcome out;
    out.alpha = alpha;
    out.n0 = n0;
    out.bootstrap_samples = replicates;
    out.seed = seed;
    out.statistic = graph_distance(g1, g2, n0);
    out.null_distribution = null_statistics(fit_null_model(g1, g2, source), g1.size(), g2.size(),
                                            n0, replicates, seed, parallel);
    out.p_value = bootstrap_p_value(out.null_distribution, out.statistic);
    out.reject = out.p_value < alpha;
    const auto rank = static_cast<std::size_t>(
        std::ceil((1.0 - alpha) * static_cast<double>(replicates)));
    out.xi_hat = out.null_distribution[std::clamp<std::size_t>(rank, 1, replicates) - 1];
    return out;
}

// Block averages with the diagonal blocks rescaled by h / (h - 1): those
// blocks contain h structural zeros (no self-loops), so the plain average
// underestimates the graphon there and a complete graph would not refit to 1.
Matrix null_cells(const Graph& g, std::size_t side) {
    Matrix cells = histogram(g, side).values;
    const std::size_t h = g.size() / side;
    if (h > 1) {
        const double scale = static_cast<double>(h) / static_cast<double>(h - 1);
        for (std::size_t i = 0; i < side; ++i) cells(i, i) = std::min(1.0, cells(i, i) * scale);
    }
    return cells;
}

} // namespace

std::vector<double> bootstrap_null(const Graphon& fit, std::size_t n1, std::size_t n2,
                                   std::size_t n0, std::size_t replicates, Seed seed) {
    return null_statistics(fit, n1, n2, n0, replicates, seed, true);
}

std::vector<double> bootstrap_null(const Graph& g1, std::size_t n2, std::size_t n0,
                                   std::size_t replicates, Seed seed) {
    return bootstrap_null(fit_null_model(g1, g1, BootstrapSource::First), g1.size(), n2, n0,
                          replicates, seed);
}

Graphon fit_null_model(const Graph& g1, const Graph& g2, BootstrapSource source) {
    if (source == BootstrapSource::First) return Graphon::grid(null_cells(g1, default_n0(g1.size())));
    const std::size_t side = default_n0(std::min(g1.size(), g2.size()));
    Matrix a = null_cells(g1, side);
    const Matrix b = null_cells(g2, side);
    auto av = a.values();
    const auto bv = b.values();
    for (std::size_t t = 0; t < av.size(); ++t) av[t] = 0.5 * (av[t] + bv[t]);
    return Graphon::grid(std::move(a));
}

double bootstrap_p_value(std::span<const double> null_distribution, double statistic) {
    const auto exceed = std::count_if(null_distribution.begin(), null_distribution.end(),
                                      [&](double v) { return v >= statistic; });
    return (1.0 + static_cast<double>(exceed)) /
           (static_cast<double>(null_distribution.size()) + 1.0);
}

TestOutcome two_sample_test(const Graph& g1, const Graph& g2, std::size_t n0,
                            std::size_t replicates, double alpha, Seed seed,
                            BootstrapSource source) {
    return run_test(g1, g2, n0, replicates, alpha, seed, source, true);
}

Matrix power_matrix(std::span<const Graphon> graphons, const PowerSettings& settings, Seed seed) {
    if (graphons.empty()) throw InputError("power_matrix: no graphons given");
    if (settings.trials < 20)
        throw SizeError("power_matrix: needs at least 20 trials, got " +
                        std::to_string(settings.trials));
    const std::size_t g = graphons.size();
    const std::size_t cells = g * g;
    std::vector<unsigned char> rejected(cells * settings.trials, 0);

    // The outer loop over (cell, trial) is the parallel one; each test runs its
    // bootstrap serially.
    parallel_for(cells * settings.trials, [&](std::size_t job) {
        const std::size_t cell = job / settings.trials;
        const std::size_t trial = job % settings.trials;
        const Seed s = derive_seed(derive_seed(seed, cell), trial);
        const Graph g1 = sample_graph(graphons[cell / g], settings.n, derive_seed(s, 0));
        const Graph g2 = sample_graph(graphons[cell % g], 2 * settings.n, derive_seed(s, 1));
        rejected[job] = run_test(g1, g2, settings.n0, settings.bootstrap, settings.alpha,
                                 derive_seed(s, 2), settings.source, false)
                            .reject;
    });

    Matrix power(g, g);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t count = 0;
        for (std::size_t t = 0; t < settings.trials; ++t) count += rejected[cell * settings.trials + t];
        power(cell / g, cell % g) =
            static_cast<double>(count) / static_cast<double>(settings.trials);
    }
    return power;
}

} // namespace gdist
