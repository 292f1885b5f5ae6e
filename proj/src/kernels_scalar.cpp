#include "gdist/kernels.hpp"

namespace gdist::kernels {
namespace {

double sum_squared_diff_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += a[k] * b[k];
    return acc;
}

std::uint64_t count_nonzero_u8_scalar(const std::uint8_t* a, std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < n; ++k) acc += (a[k] != 0);
    return acc;
}

void rotate_scalar(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t k = 0; k < n; ++k) {
        const double xk = x[k];
        const double yk = y[k];
        x[k] = c * xk - s * yk;
        y[k] = s * xk + c * yk;
    }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

const KernelTable kScalar{
    Isa::Scalar,      "scalar",      &sum_squared_diff_scalar, &dot_scalar,
    &count_nonzero_u8_scalar, &rotate_scalar, &axpy_scalar,
};

} // namespace

const KernelTable& scalar_table() { return kScalar; }

} // namespace gdist::kernels
