// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "hillpt/simd.hpp"

namespace hillpt::simd::detail {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d a = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void reflect3_avx2(double* r0, double* r1, double* r2, std::size_t n,
                   double q, double r, double x, double y, double z) {
    const __m256d vq = _mm256_set1_pd(q);
    const __m256d vr = _mm256_set1_pd(r);
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d vz = _mm256_set1_pd(z);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d a0 = _mm256_loadu_pd(r0 + j);
        const __m256d a1 = _mm256_loadu_pd(r1 + j);
        const __m256d a2 = _mm256_loadu_pd(r2 + j);
        const __m256d p = _mm256_fmadd_pd(vr, a2, _mm256_fmadd_pd(vq, a1, a0));
        _mm256_storeu_pd(r0 + j, _mm256_fnmadd_pd(p, vx, a0));
        _mm256_storeu_pd(r1 + j, _mm256_fnmadd_pd(p, vy, a1));
        _mm256_storeu_pd(r2 + j, _mm256_fnmadd_pd(p, vz, a2));
    }
    for (; j < n; ++j) {
        const double p = r0[j] + q * r1[j] + r * r2[j];
        r0[j] -= p * x;
        r1[j] -= p * y;
        r2[j] -= p * z;
    }
}

void reflect2_avx2(double* r0, double* r1, std::size_t n, double q, double x, double y) {
    const __m256d vq = _mm256_set1_pd(q);
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d vy = _mm256_set1_pd(y);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d a0 = _mm256_loadu_pd(r0 + j);
        const __m256d a1 = _mm256_loadu_pd(r1 + j);
        const __m256d p = _mm256_fmadd_pd(vq, a1, a0);
        _mm256_storeu_pd(r0 + j, _mm256_fnmadd_pd(p, vx, a0));
        _mm256_storeu_pd(r1 + j, _mm256_fnmadd_pd(p, vy, a1));
    }
    for (; j < n; ++j) {
        const double p = r0[j] + q * r1[j];
        r0[j] -= p * x;
        r1[j] -= p * y;
    }
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{Isa::avx2, dot_avx2, axpy_avx2, reflect3_avx2, reflect2_avx2};
    return table;
}

}  // namespace hillpt::simd::detail
