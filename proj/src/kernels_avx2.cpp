// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "gdist/kernels.hpp"

#include <immintrin.h>

namespace gdist::kernels {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_squared_diff_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; k + 4 <= n; k += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return acc;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
    }
    for (; k + 4 <= n; k += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) acc += a[k] * b[k];
    return acc;
}

std::uint64_t count_nonzero_u8_avx2(const std::uint8_t* a, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    const __m256i one = _mm256_set1_epi8(1);
    __m256i acc = _mm256_setzero_si256();
    std::size_t k = 0;
    for (; k + 32 <= n; k += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
        // 0xFF where v == 0; andnot turns nonzero bytes into 1.
        const __m256i nz = _mm256_andnot_si256(_mm256_cmpeq_epi8(v, zero), one);
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(nz, zero));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; k < n; ++k) total += (a[k] != 0);
    return total;
}

void rotate_avx2(double* x, double* y, std::size_t n, double c, double s) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d xk = _mm256_loadu_pd(x + k);
        const __m256d yk = _mm256_loadu_pd(y + k);
        _mm256_storeu_pd(x + k, _mm256_fmsub_pd(vc, xk, _mm256_mul_pd(vs, yk)));
        _mm256_storeu_pd(y + k, _mm256_fmadd_pd(vs, xk, _mm256_mul_pd(vc, yk)));
    }
    for (; k < n; ++k) {
        const double xk = x[k];
        const double yk = y[k];
        x[k] = c * xk - s * yk;
        y[k] = s * xk + c * yk;
    }
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        _mm256_storeu_pd(y + k,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k)));
    }
    for (; k < n; ++k) y[k] += alpha * x[k];
}

} // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{
    Isa::Avx2,    "avx2",    &sum_squared_diff_avx2, &dot_avx2, &count_nonzero_u8_avx2,
    &rotate_avx2, &axpy_avx2,
};

} // namespace gdist::kernels
