// aarch64 only; NEON is part of the baseline there, so no runtime check.
#include <arm_neon.h>

#include "hillpt/simd.hpp"

namespace hillpt::simd::detail {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t a = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void reflect3_neon(double* r0, double* r1, double* r2, std::size_t n,
                   double q, double r, double x, double y, double z) {
    const float64x2_t vq = vdupq_n_f64(q);
    const float64x2_t vr = vdupq_n_f64(r);
    const float64x2_t vx = vdupq_n_f64(x);
    const float64x2_t vy = vdupq_n_f64(y);
    const float64x2_t vz = vdupq_n_f64(z);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t a0 = vld1q_f64(r0 + j);
        const float64x2_t a1 = vld1q_f64(r1 + j);
        const float64x2_t a2 = vld1q_f64(r2 + j);
        const float64x2_t p = vfmaq_f64(vfmaq_f64(a0, vq, a1), vr, a2);
        vst1q_f64(r0 + j, vfmsq_f64(a0, p, vx));
        vst1q_f64(r1 + j, vfmsq_f64(a1, p, vy));
        vst1q_f64(r2 + j, vfmsq_f64(a2, p, vz));
    }
    for (; j < n; ++j) {
        const double p = r0[j] + q * r1[j] + r * r2[j];
        r0[j] -= p * x;
        r1[j] -= p * y;
        r2[j] -= p * z;
    }
}

void reflect2_neon(double* r0, double* r1, std::size_t n, double q, double x, double y) {
    const float64x2_t vq = vdupq_n_f64(q);
    const float64x2_t vx = vdupq_n_f64(x);
    const float64x2_t vy = vdupq_n_f64(y);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t a0 = vld1q_f64(r0 + j);
        const float64x2_t a1 = vld1q_f64(r1 + j);
        const float64x2_t p = vfmaq_f64(a0, vq, a1);
        vst1q_f64(r0 + j, vfmsq_f64(a0, p, vx));
        vst1q_f64(r1 + j, vfmsq_f64(a1, p, vy));
    }
    for (; j < n; ++j) {
        const double p = r0[j] + q * r1[j];
        r0[j] -= p * x;
        r1[j] -= p * y;
    }
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable table{Isa::neon, dot_neon, axpy_neon, reflect3_neon, reflect2_neon};
    return table;
}

}  // namespace hillpt::simd::detail
