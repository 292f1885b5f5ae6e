#include "gdist/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "gdist/kernels.hpp"

namespace gdist {
namespace {

void symmetrize(Matrix& x) {
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = i + 1; j < x.cols(); ++j) {
            const double v = 0.5 * (x(i, j) + x(j, i));
            x(i, j) = v;
            x(j, i) = v;
        }
}

Matrix project_psd(const Matrix& y) {
    const EigenPairs e = sym_eigen(y);
    const std::size_t m = y.rows();
    Matrix x(m, m);
    std::vector<double> v(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double lambda = e.values[k];
        if (lambda <= 0.0) continue;
        for (std::size_t i = 0; i < m; ++i) v[i] = e.vectors(i, k);
        for (std::size_t i = 0; i < m; ++i)
            if (v[i] != 0.0) kernels::axpy(lambda * v[i], v, x.row(i));
    }
    symmetrize(x);
    return x;
}

double affine_violation(const Matrix& x, std::size_t k) {
    double worst = std::abs(trace(x) - static_cast<double>(k));
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double s = 0.0;
        for (double v : x.row(i)) s += v;
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

double objective(const Matrix& s, const Matrix& x) { return kernels::dot(s.values(), x.values()); }

} // namespace

Matrix project_affine(const Matrix& y, std::size_t k) {
    const std::size_t m = y.rows();
    if (!y.square() || m < 2) throw SizeError("project_affine: needs a square matrix with m >= 2");
    const double md = static_cast<double>(m);
    std::vector<double> r(m);
    double r_total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (double v : y.row(i)) s += v;
        r[i] = s - 1.0;
        r_total += r[i];
    }
    // X = Y - (lambda 1^T + 1 lambda^T)/2 - nu I, multipliers from the
    // row-sum and trace conditions.
    const double nu = (trace(y) - static_cast<double>(k) - r_total / md) / (md - 1.0);
    const double lambda_total = r_total / md - nu;
    std::vector<double> lambda(m);
    for (std::size_t i = 0; i < m; ++i) lambda[i] = (2.0 / md) * (r[i] - (lambda_total / 2.0 + nu));

    Matrix x(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            x(i, j) = 0.5 * (y(i, j) + y(j, i)) - 0.5 * (lambda[i] + lambda[j]) - (i == j ? nu : 0.0);
    return x;
}

Matrix project_polytope(const Matrix& y, std::size_t k, std::size_t iterations, double tol) {
    // The affine set needs no Dykstra correction term; only the orthant does.
    Matrix x = y;
    symmetrize(x);
    Matrix q(y.rows(), y.cols());
    for (std::size_t it = 0; it < std::max<std::size_t>(iterations, 1); ++it) {
        const Matrix a = project_affine(x, k);
        auto av = a.values();
        auto qv = q.values();
        auto xv = x.values();
        for (std::size_t t = 0; t < av.size(); ++t) {
            const double shifted = av[t] + qv[t];
            xv[t] = std::max(shifted, 0.0);
            qv[t] = shifted - xv[t];
        }
        if (affine_violation(x, k) <= tol) break;
    }
    return x;
}

Feasibility sdp_feasibility(const Matrix& x, std::size_t k) {
    Feasibility f;
    f.min_entry = *std::min_element(x.values().begin(), x.values().end());
    const EigenPairs e = sym_eigen(x);
    f.min_eigenvalue = *std::min_element(e.values.begin(), e.values.end());
    f.trace_error = std::abs(trace(x) - static_cast<double>(k));
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double s = 0.0;
        for (double v : x.row(i)) s += v;
        f.max_row_sum_error = std::max(f.max_row_sum_error, std::abs(s - 1.0));
    }
    return f;
}

SdpSolution solve_sdp(const SimilarityMatrix& s, std::size_t k, const SdpParams& params) {
    return solve_sdp(s.values, k, params);
}

SdpSolution solve_sdp(const Matrix& s, std::size_t k, const SdpParams& params) {
    const std::size_t m = s.rows();
    if (!s.square()) throw SizeError("solve_sdp: similarity matrix must be square");
    if (k < 2 || k > m)
        throw SizeError("solve_sdp: K=" + std::to_string(k) + " must satisfy 2 <= K <= m=" +
                        std::to_string(m));
    if (!(params.tol > 0.0) || !(params.rho > 0.0))
        throw DomainError("solve_sdp: tol and rho must be positive");

    // Scaled-form ADMM on  min -<S,X> + I_psd(X) + I_poly(Z)  s.t.  X = Z.
    double rho = params.rho;
    Matrix z = Matrix::identity(m);
    for (double& v : z.values()) v *= static_cast<double>(k) / static_cast<double>(m);
    z = project_polytope(z, k, params.dykstra_iterations, params.tol * 1e-2);
    Matrix u(m, m);
    Matrix x(m, m);
    Matrix work(m, m);

    SdpSolution sol;
    for (std::size_t it = 1; it <= params.max_iterations; ++it) {
        {
            auto wv = work.values();
            const auto zv = z.values();
            const auto uv = u.values();
            const auto sv = s.values();
            for (std::size_t t = 0; t < wv.size(); ++t) wv[t] = zv[t] - uv[t] + sv[t] / rho;
        }
        x = project_psd(work);

        {
            auto wv = work.values();
            const auto xv = x.values();
            const auto uv = u.values();
            for (std::size_t t = 0; t < wv.size(); ++t) wv[t] = xv[t] + uv[t];
        }
        Matrix z_next = project_polytope(work, k, params.dykstra_iterations, params.tol * 1e-2);

        const double primal = frobenius_distance(x, z_next);
        const double dual = rho * frobenius_distance(z_next, z);
        z = std::move(z_next);
        {
            auto uv = u.values();
            const auto xv = x.values();
            const auto zv = z.values();
            for (std::size_t t = 0; t < uv.size(); ++t) uv[t] += xv[t] - zv[t];
        }

        sol.iterations = it;
        sol.primal_residual = primal;
        sol.dual_residual = dual;
        if (std::max(primal, dual) <= params.tol) break;

        if (params.balance_interval > 0 && it % params.balance_interval == 0) {
            if (primal > 10.0 * dual) {
                rho *= 2.0;
                for (double& v : u.values()) v *= 0.5;
            } else if (dual > 10.0 * primal) {
                rho *= 0.5;
                for (double& v : u.values()) v *= 2.0;
            }
        }
    }

    sol.x = project_polytope(z, k, 100 * std::max<std::size_t>(params.dykstra_iterations, 1),
                             params.tol * 1e-2);
    sol.objective = objective(s, sol.x);
    sol.rho = rho;
    if (std::max(sol.primal_residual, sol.dual_residual) > 10.0 * params.tol) {
        std::ostringstream os;
        os << "solve_sdp: no convergence after " << sol.iterations
           << " iterations (primal residual " << sol.primal_residual << ", dual residual "
           << sol.dual_residual << ", tol " << params.tol << ")";
        throw SdpConvergenceError(os.str(), std::move(sol));
    }
    return sol;
}

} // namespace gdist
