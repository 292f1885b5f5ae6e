#pragma once

// Data-parallel inner loops. Each kernel has a portable scalar reference and,
// where the build and the CPU allow it, an AVX2/FMA variant. The active table
// is chosen once at first use; tests compare every variant against the
// scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gdist::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    Isa isa;
    const char* name;
    // sum_k (a_k - b_k)^2
    double (*sum_squared_diff)(const double* a, const double* b, std::size_t n);
    // sum_k a_k * b_k
    double (*dot)(const double* a, const double* b, std::size_t n);
    // number of nonzero bytes (entries are 0/1 adjacency bytes)
    std::uint64_t (*count_nonzero_u8)(const std::uint8_t* a, std::size_t n);
    // (x, y) <- (c*x - s*y, s*x + c*y), elementwise
    void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
    // y <- y + alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table();

// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

// Active table. Defaults to the widest supported ISA; the environment
// variable GRAPHON_DIST_SIMD=scalar forces the reference path.
const KernelTable& active();
void select(Isa isa);
std::string_view isa_name(Isa isa);

inline double sum_squared_diff(std::span<const double> a, std::span<const double> b) {
    return active().sum_squared_diff(a.data(), b.data(), a.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}
inline std::uint64_t count_nonzero(std::span<const std::uint8_t> a) {
    return active().count_nonzero_u8(a.data(), a.size());
}
inline void rotate(std::span<double> x, std::span<double> y, double c, double s) {
    active().rotate(x.data(), y.data(), x.size(), c, s);
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

} // namespace gdist::kernels
