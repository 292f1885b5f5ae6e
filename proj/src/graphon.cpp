#include "gdist/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gdist/error.hpp"
#include "gdist/kernels.hpp"
#include "gdist/parallel.hpp"

namespace gdist {
namespace {

std::size_t cell_index(double u, std::size_t g) {
    // Half-open cells [i/g, (i+1)/g); u == 1 belongs to the last cell.
    const auto i = static_cast<std::size_t>(u * static_cast<double>(g));
    return std::min(i, g - 1);
}

double eval_builtin(BuiltinGraphon id, double u, double v) {
    switch (id) {
    case BuiltinGraphon::W1:
        return u * v;
    case BuiltinGraphon::W2:
        return std::exp(-std::pow(std::max(u, v), 0.75));
    case BuiltinGraphon::W3:
    {
        // Fixed argument order keeps the rounding symmetric.
        const double lo = std::min(u, v), hi = std::max(u, v);
        return std::exp(-0.5 * (lo + std::sqrt(lo) + std::sqrt(hi)));
    }
    case BuiltinGraphon::W4:
        return std::abs(u - v);
    }
    return 0.0;
}

} // namespace

Graphon Graphon::grid(Matrix cells) {
    if (cells.empty() || !cells.square()) throw InputError("grid graphon must be a non-empty square matrix");
    if (!is_symmetric(cells)) throw InputError("grid graphon must be symmetric");
    for (double p : cells.values())
        if (!(p >= 0.0 && p <= 1.0)) throw InputError("grid graphon entries must lie in [0,1]");
    return Graphon(std::move(cells));
}

Graphon Graphon::constant(double p, std::size_t side) { return grid(Matrix(side, side, p)); }

Graphon Graphon::parse(std::string_view id) {
    if (id == "W1") return builtin(BuiltinGraphon::W1);
    if (id == "W2") return builtin(BuiltinGraphon::W2);
    if (id == "W3") return builtin(BuiltinGraphon::W3);
    if (id == "W4") return builtin(BuiltinGraphon::W4);
    throw InputError("unknown graphon '" + std::string(id) + "' (expected W1..W4)");
}

std::string Graphon::name() const {
    if (builtin_) return "W" + std::to_string(static_cast<int>(*builtin_) + 1);
    std::ostringstream os;
    os << "grid" << cells_.rows();
    return os.str();
}

double Graphon::eval_unchecked(double u, double v) const noexcept {
    if (builtin_) return eval_builtin(*builtin_, u, v);
    const std::size_t g = cells_.rows();
    return cells_(cell_index(u, g), cell_index(v, g));
}

double Graphon::operator()(double u, double v) const {
    if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << "graphon argument outside [0,1]: (" << u << ", " << v << ")";
        throw DomainError(os.str());
    }
    return eval_unchecked(u, v);
}

double eval_graphon(const Graphon& w, double u, double v) { return w(u, v); }

Graph sample_graph(const Graphon& w, std::size_t n, Seed seed) {
    return sample_graph(w, n, seed, nullptr);
}

Graph sample_graph(const Graphon& w, std::size_t n, Seed seed, std::vector<double>* latents) {
    if (n == 0) throw SizeError("sample_graph: n must be positive");
    Rng rng(seed);
    std::vector<double> u(n);
    for (auto& x : u) x = rng.uniform();

    Graph g(n);
    if (w.is_grid()) {
        // Cell lookups are hoisted: each node's cell is computed once.
        const Matrix& cells = w.cells();
        const std::size_t side = cells.rows();
        std::vector<std::size_t> cell(n);
        for (std::size_t i = 0; i < n; ++i) cell[i] = cell_index(u[i], side);
        for (std::size_t i = 0; i < n; ++i) {
            const auto prow = cells.row(cell[i]);
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.uniform() < prow[cell[j]]) g.set_edge_unchecked(i, j);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.uniform() < w.eval_unchecked(u[i], u[j])) g.set_edge_unchecked(i, j);
    }
    if (latents) *latents = std::move(u);
    return g;
}

Population sample_population(const PopulationSpec& spec, Seed seed) {
    if (spec.graphons.empty()) throw InputError("population needs at least one graphon");
    if (spec.per_graphon == 0) throw SizeError("population needs at least one graph per graphon");
    if (spec.min_nodes == 0 || spec.min_nodes > spec.max_nodes)
        throw SizeError("population node range must satisfy 1 <= min <= max");

    const std::size_t m = spec.graphons.size() * spec.per_graphon;
    Population pop;
    pop.labels.resize(m);
    std::vector<std::optional<Graph>> slots(m);
    parallel_for(m, [&](std::size_t k) {
        Rng stream(derive_seed(seed, k));
        const auto n = static_cast<std::size_t>(stream.uniform_int(
            static_cast<std::int64_t>(spec.min_nodes), static_cast<std::int64_t>(spec.max_nodes)));
        const std::size_t label = k / spec.per_graphon;
        Graph g = sample_graph(spec.graphons[label], n, stream.next());
        g.set_source_id(spec.graphons[label].name() + "#" + std::to_string(k % spec.per_graphon));
        slots[k] = std::move(g);
        pop.labels[k] = static_cast<int>(label);
    });
    pop.graphs.reserve(m);
    for (auto& s : slots) pop.graphs.push_back(std::move(*s));
    return pop;
}

namespace {

// Overlap of target cell t (of n0) with source cell s (of g), as a fraction
// of the target cell. Integer arithmetic on the common scale g * n0, so a
// full overlap is exactly 1.
double overlap(std::size_t t, std::size_t n0, std::size_t s, std::size_t g) {
    const std::size_t lo = std::max(t * g, s * n0);
    const std::size_t hi = std::min((t + 1) * g, (s + 1) * n0);
    return hi > lo ? static_cast<double>(hi - lo) / static_cast<double>(g) : 0.0;
}

// Exact cell averages of a piecewise-constant graphon.
Histogram discretize_grid(const Matrix& cells, std::size_t n0) {
    const std::size_t g = cells.rows();
    Histogram h{Matrix(n0, n0)};
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = i; j < n0; ++j) {
            double acc = 0.0;
            for (std::size_t a = 0; a < g; ++a) {
                const double wa = overlap(i, n0, a, g);
                if (wa == 0.0) continue;
                for (std::size_t b = 0; b < g; ++b) {
                    const double wb = overlap(j, n0, b, g);
                    if (wb != 0.0) acc += wa * wb * cells(a, b);
                }
            }
            h.values(i, j) = h.values(j, i) = acc;
        }
    return h;
}

} // namespace

Histogram discretize(const Graphon& w, std::size_t n0, QuadratureOptions opts) {
    if (n0 == 0) throw SizeError("discretize: n0 must be positive");
    if (opts.points_per_cell == 0) throw SizeError("discretize: quadrature needs at least one point");
    if (w.is_grid()) return discretize_grid(w.cells(), n0);
    const std::size_t q = opts.points_per_cell;
    const double cell = 1.0 / static_cast<double>(n0);

    Histogram h{Matrix(n0, n0)};
    for (std::size_t i = 0; i < n0; ++i) {
        for (std::size_t j = i; j < n0; ++j) {
            double acc = 0.0;
            for (std::size_t a = 0; a < q; ++a) {
                const double u = (static_cast<double>(i) + (a + 0.5) / q) * cell;
                for (std::size_t b = 0; b < q; ++b) {
                    const double v = (static_cast<double>(j) + (b + 0.5) / q) * cell;
                    acc += w.eval_unchecked(u, v);
                }
            }
            const double avg = acc / static_cast<double>(q * q);
            h.values(i, j) = avg;
            h.values(j, i) = avg;
        }
    }
    return h;
}

double l2_distance(const Graphon& a, const Graphon& b, std::size_t resolution) {
    if (resolution < 2) throw SizeError("l2_distance: resolution must be at least 2");
    const double r = static_cast<double>(resolution);
    std::vector<double> ra(resolution), rb(resolution);
    double acc = 0.0;
    for (std::size_t i = 0; i < resolution; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / r;
        for (std::size_t j = 0; j < resolution; ++j) {
            const double v = (static_cast<double>(j) + 0.5) / r;
            ra[j] = a.eval_unchecked(u, v);
            rb[j] = b.eval_unchecked(u, v);
        }
        acc += kernels::sum_squared_diff(ra, rb);
    }
    return std::sqrt(acc / (r * r));
}

DegreeDiagnostic degree_diagnostic(const Graphon& w, std::size_t n0) {
    const Histogram h = discretize(w, n0);
    DegreeDiagnostic out;
    out.degree_profile.resize(n0);
    for (std::size_t i = 0; i < n0; ++i) {
        double s = 0.0;
        for (double x : h.values.row(i)) s += x;
        out.degree_profile[i] = s / static_cast<double>(n0);
    }
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < n0; ++i) {
        const double step = out.degree_profile[i] - out.degree_profile[i - 1];
        if (step < -1e-12) up = false;
        if (step > 1e-12) down = false;
    }
    out.monotone = up || down;
    return out;
}

} // namespace gdist
