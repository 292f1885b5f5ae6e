#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gdist/graph.hpp"
#include "gdist/matrix.hpp"
#include "gdist/rng.hpp"

namespace gdist {

enum class BuiltinGraphon { W1, W2, W3, W4 };

// Symmetric link-probability function on [0,1]^2: one of the four analytic
// test graphons, or a piecewise-constant function over a uniform g x g grid.
class Graphon {
public:
    static Graphon builtin(BuiltinGraphon id) { return Graphon(id); }
    // Throws InputError unless `cells` is square, symmetric, and in [0,1].
    static Graphon grid(Matrix cells);
    static Graphon grid(const Histogram& h) { return grid(h.values); }
    static Graphon constant(double p, std::size_t side = 1);
    // Accepts "W1".."W4".
    static Graphon parse(std::string_view id);

    bool is_grid() const noexcept { return !builtin_.has_value(); }
    std::optional<BuiltinGraphon> builtin_id() const noexcept { return builtin_; }
    const Matrix& cells() const noexcept { return cells_; }
    std::string name() const;

    // Throws DomainError when u or v is outside [0,1].
    double operator()(double u, double v) const;

    // Evaluation without the domain check, for quadrature and sampling loops.
    double eval_unchecked(double u, double v) const noexcept;

private:
    explicit Graphon(BuiltinGraphon id) : builtin_(id) {}
    explicit Graphon(Matrix cells) : cells_(std::move(cells)) {}

    std::optional<BuiltinGraphon> builtin_;
    Matrix cells_;
};

double eval_graphon(const Graphon& w, double u, double v);

// Exchangeable sample: latent U_i ~ Uniform[0,1], edges i<j independently
// with probability w(U_i, U_j). Deterministic in `seed`.
Graph sample_graph(const Graphon& w, std::size_t n, Seed seed);

// Same, also returning the latent positions (used by oracle tests).
Graph sample_graph(const Graphon& w, std::size_t n, Seed seed, std::vector<double>* latents);

struct PopulationSpec {
    std::vector<Graphon> graphons;
    std::size_t per_graphon = 10;
    std::size_t min_nodes = 50;
    std::size_t max_nodes = 100;
};

struct Population {
    std::vector<Graph> graphs;
    std::vector<int> labels;
};

// Graph k (graphon k / per, size uniform in [min, max]) uses the derived
// stream (seed, k), so any subset can be regenerated independently.
Population sample_population(const PopulationSpec& spec, Seed seed);

struct QuadratureOptions {
    std::size_t points_per_cell = 16;
};

// n0 x n0 matrix of cell averages of w: midpoint rule inside each cell for the
// analytic graphons, exact overlap-weighted averages for grid graphons.
Histogram discretize(const Graphon& w, std::size_t n0, QuadratureOptions opts = {});

// Midpoint-rule approximation of the L2 distance on a resolution^2 grid.
double l2_distance(const Graphon& a, const Graphon& b, std::size_t resolution = 512);

// Degree function g(u) = int w(u, v) dv, sampled as the row means of the
// discretization. `monotone` reports whether it is monotone in either
// direction, i.e. whether degree sorting recovers a measure-preserving
// rearrangement of the latent positions. W4 fails this check.
struct DegreeDiagnostic {
    std::vector<double> degree_profile;
    bool monotone = true;
};
DegreeDiagnostic degree_diagnostic(const Graphon& w, std::size_t n0 = 64);

} // namespace gdist
