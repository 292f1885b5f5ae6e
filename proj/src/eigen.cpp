#include "gdist/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gdist/error.hpp"
#include "gdist/kernels.hpp"

namespace gdist {

std::vector<double> EigenPairs::vector(std::size_t k) const {
    std::vector<double> v(vectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
    return v;
}

EigenPairs sym_eigen(const Matrix& m) {
    if (!m.square()) throw InputError("sym_eigen: matrix must be square");
    for (double x : m.values())
        if (!std::isfinite(x)) throw InputError("sym_eigen: non-finite entry");

    const std::size_t n = m.rows();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));

    // Rows of vt are the eigenvectors, so both updates per rotation act on
    // contiguous rows.
    Matrix vt = Matrix::identity(n);
    const double scale = frobenius_norm(a);

    constexpr std::size_t kMaxSweeps = 100;
    for (std::size_t sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(2.0 * off) <= 1e-15 * scale) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // Negligible relative to both diagonal entries: drop it.
                if (std::abs(apq) < 1e-18 * std::abs(app) && std::abs(apq) < 1e-18 * std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                kernels::rotate(a.row(p), a.row(q), c, s);
                for (std::size_t k = 0; k < n; ++k) {
                    a(k, p) = a(p, k);
                    a(k, q) = a(q, k);
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                kernels::rotate(vt.row(p), vt.row(q), c, s);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const double ai = std::abs(a(i, i));
        const double aj = std::abs(a(j, j));
        if (ai != aj) return ai > aj;
        return a(i, i) > a(j, j);
    });

    EigenPairs out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src);
        const auto v = vt.row(src);
        std::size_t lead = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[lead]) + 1e-12) lead = i;
        const double sign = v[lead] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v[i];
    }
    return out;
}

Matrix eigen_rows(const EigenPairs& e, std::span<const std::size_t> columns) {
    Matrix out(e.vectors.rows(), columns.size());
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t c = 0; c < columns.size(); ++c) out(i, c) = e.vectors(i, columns[c]);
    return out;
}

} // namespace gdist
