#include "gdist/numerics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "gdist/error.hpp"

namespace gdist {

std::vector<std::size_t> max_weight_assignment(const Matrix& weights) {
    if (!weights.square()) throw InputError("assignment: weight matrix must be square");
    const std::size_t n = weights.rows();
    if (n == 0) return {};
    double wmax = 0.0;
    for (double w : weights.values()) wmax = std::max(wmax, w);

    // Min-cost assignment on cost = wmax - w; 1-based with a virtual column 0.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = (wmax - weights(i0 - 1, j - 1)) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

double hungarian_error(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size())
        throw InputError("hungarian_error: label vectors differ in length (" +
                         std::to_string(truth.size()) + " vs " + std::to_string(predicted.size()) +
                         ")");
    if (truth.empty()) throw InputError("hungarian_error: empty label vectors");
    int top = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0 || predicted[i] < 0)
            throw InputError("hungarian_error: labels must be non-negative");
        top = std::max({top, truth[i], predicted[i]});
    }
    const auto k = static_cast<std::size_t>(top) + 1;
    Matrix confusion(k, k);
    for (std::size_t i = 0; i < truth.size(); ++i)
        confusion(static_cast<std::size_t>(predicted[i]), static_cast<std::size_t>(truth[i])) += 1.0;
    const auto match = max_weight_assignment(confusion);
    double agree = 0.0;
    for (std::size_t r = 0; r < k; ++r) agree += confusion(r, match[r]);
    return (static_cast<double>(truth.size()) - agree) / static_cast<double>(truth.size());
}

double ari(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size())
        throw InputError("ari: label vectors differ in length (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    auto comb2 = [](double x) { return x * (x - 1.0) / 2.0; };
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    double index = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (const auto& [key, c] : joint) index += comb2(c);
    for (const auto& [key, c] : rows) sum_a += comb2(c);
    for (const auto& [key, c] : cols) sum_b += comb2(c);
    const double pairs = comb2(static_cast<double>(a.size()));
    const double expected = pairs > 0.0 ? sum_a * sum_b / pairs : 0.0;
    const double max_index = 0.5 * (sum_a + sum_b);
    const double denom = max_index - expected;
    if (denom == 0.0) return 1.0;
    return (index - expected) / denom;
}

} // namespace gdist
